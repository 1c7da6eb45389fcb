#include "flexline/proj.hpp"

#include <algorithm>

#include "flexline/error.hpp"

namespace flexline {

namespace {

Vec3 normalize(const Vec3& v) {
  for (const auto& c : v) {
    if (!c.is_zero()) {
      if (c.is_one()) return v;
      const Fe s = c.inv();
      return {v[0] * s, v[1] * s, v[2] * s};
    }
  }
  throw Error(Errc::InvalidArgument, "the zero vector is not a projective point");
}

std::strong_ordering compare_range(const Fe* a, const Fe* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = a[i] <=> b[i];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

ProjPoint::ProjPoint(const Vec3& v) : v_(normalize(v)) {}

ProjPoint ProjPoint::from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c) {
  return ProjPoint(Vec3{f.from_int(a), f.from_int(b), f.from_int(c)});
}

std::string ProjPoint::format(const Field& f, bool dual) const {
  std::string out = dual ? "dual [" : "[";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i > 0) out += ",";
    out += f.format(v_[i]);
  }
  return out + "]";
}

ProjPoint ProjPoint::parse(const Field& f, std::string_view text) {
  auto s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.starts_with("dual")) s.remove_prefix(4);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error(Errc::ParseError, "expected [a,b,c]");
  s = s.substr(1, s.size() - 2);
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto comma = s.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) throw Error(Errc::ParseError, "expected three coordinates");
    v[i] = f.parse_element(s.substr(0, comma));
    if (comma != std::string_view::npos) s.remove_prefix(comma + 1);
  }
  return ProjPoint(v);
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  return compare_range(a.v_.data(), b.v_.data(), 3);
}

std::size_t ProjPointHash::operator()(const ProjPoint& p) const {
  std::size_t h = 0;
  for (const auto& c : p.coords()) h = h * 0x9e3779b97f4a7c15ULL + c.hash();
  return h;
}

ProjMap::ProjMap(const Mat3& m) {
  if (m.det().is_zero()) throw Error(Errc::SingularMatrix, "projective map must be invertible");
  for (const auto& c : m.m) {
    if (!c.is_zero()) {
      m_ = c.is_one() ? m : m.scaled(c.inv());
      return;
    }
  }
}

ProjMap ProjMap::identity(const Field& f) { return ProjMap(Mat3::identity(f)); }

bool ProjMap::is_identity() const {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Fe& c = m_(i, j);
      if (i == j ? !c.is_one() : !c.is_zero()) return false;
    }
  }
  return true;
}

Vec3 ProjMap::apply_raw(const Vec3& v, Role role) const {
  if (role == Role::Point) return m_ * v;
  return m_.adjugate().transpose() * v;
}

ProjPoint ProjMap::apply(const ProjPoint& p, Role role) const { return ProjPoint(apply_raw(p.coords(), role)); }

ProjMap ProjMap::inverse() const { return ProjMap(m_.adjugate()); }

std::string ProjMap::format(const Field& f) const {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    out += i > 0 ? ",[" : "[";
    for (int j = 0; j < 3; ++j) {
      if (j > 0) out += ",";
      out += f.format(m_(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::strong_ordering operator<=>(const ProjMap& a, const ProjMap& b) {
  return compare_range(a.m_.m.data(), b.m_.m.data(), 9);
}

bool general_position(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return !det3(a, b, c).is_zero() && !det3(a, b, d).is_zero() && !det3(a, c, d).is_zero() &&
         !det3(b, c, d).is_zero();
}

namespace {

// Sends e1, e2, e3, (1,1,1) to the frame.
Mat3 frame_matrix(std::span<const ProjPoint, 4> f) {
  const Vec3& p1 = f[0].coords();
  const Vec3& p2 = f[1].coords();
  const Vec3& p3 = f[2].coords();
  const Vec3& p4 = f[3].coords();
  if (!general_position(p1, p2, p3, p4)) throw Error(Errc::DegenerateFrame, "three frame points are collinear");
  // Cramer numerators; the common denominator only rescales.
  const Fe a = det3(p4, p2, p3);
  const Fe b = det3(p1, p4, p3);
  const Fe c = det3(p1, p2, p4);
  return Mat3::from_columns({p1[0] * a, p1[1] * a, p1[2] * a}, {p2[0] * b, p2[1] * b, p2[2] * b},
                            {p3[0] * c, p3[1] * c, p3[2] * c});
}

}  // namespace

ProjMap map_from_frames(std::span<const ProjPoint, 4> src, std::span<const ProjPoint, 4> dst) {
  const Mat3 a = frame_matrix(src);
  const Mat3 b = frame_matrix(dst);
  return ProjMap(b * a.adjugate());
}

LinearSolve row_reduce(const Field& f, std::vector<std::vector<Fe>> rows, int cols) {
  LinearSolve out;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][static_cast<std::size_t>(c)].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Fe inv = rows[r][static_cast<std::size_t>(c)].inv();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const Fe factor = rows[i][static_cast<std::size_t>(c)];
      if (factor.is_zero()) continue;
      for (int j = 0; j < cols; ++j) {
        rows[i][static_cast<std::size_t>(j)] -= factor * rows[r][static_cast<std::size_t>(j)];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = static_cast<int>(r);
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<Fe> v(static_cast<std::size_t>(cols), f.zero());
    v[static_cast<std::size_t>(free)] = f.one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][static_cast<std::size_t>(free)];
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

ConicFit conic_through(const Field& f, std::span<const ProjPoint> points) {
  static constexpr std::array<Exponent, 6> kMonomials{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  std::vector<std::vector<Fe>> rows;
  for (const auto& p : points) {
    std::vector<Fe> row;
    for (const auto& e : kMonomials) {
      Fe v = f.one();
      for (std::size_t i = 0; i < 3; ++i) {
        for (int k = 0; k < e[i]; ++k) v *= p.coords()[i];
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const auto solved = row_reduce(f, std::move(rows), 6);
  ConicFit out;
  out.rank = solved.rank;
  if (!solved.kernel.empty()) {
    HomPoly c(f, 2);
    for (std::size_t i = 0; i < 6; ++i) c.set(kMonomials[i][0], kMonomials[i][1], kMonomials[i][2], solved.kernel[0][i]);
    out.conic = c.normalized();
  }
  return out;
}

namespace {

// Symmetric bilinear form attached to a quadratic form, scaled by 2 to avoid halves.
Mat3 polar_matrix(const HomPoly& c) {
  const Field& f = c.field();
  Mat3 a;
  a(0, 0) = c.coeff(2, 0, 0) * f.from_int(2);
  a(1, 1) = c.coeff(0, 2, 0) * f.from_int(2);
  a(2, 2) = c.coeff(0, 0, 2) * f.from_int(2);
  a(0, 1) = a(1, 0) = c.coeff(1, 1, 0);
  a(0, 2) = a(2, 0) = c.coeff(1, 0, 1);
  a(1, 2) = a(2, 1) = c.coeff(0, 1, 1);
  return a;
}

}  // namespace

int conic_rank(const HomPoly& c) {
  if (c.degree() != 2) throw Error(Errc::InvalidArgument, "not a conic");
  const Mat3 a = polar_matrix(c);
  std::vector<std::vector<Fe>> rows;
  for (int i = 0; i < 3; ++i) rows.push_back({a(i, 0), a(i, 1), a(i, 2)});
  return row_reduce(c.field(), std::move(rows), 3).rank;
}

ConicParametrization parametrize_conic(const HomPoly& c, const ProjPoint& base) {
  if (c.degree() != 2) throw Error(Errc::InvalidArgument, "not a conic");
  if (conic_rank(c) < 3) throw Error(Errc::ReducibleConic, "conic is degenerate");
  if (!c.eval(base.coords()).is_zero()) throw Error(Errc::BaseNotOnConic, "base point is not on the conic");
  const Field& f = c.field();
  const Mat3 a = polar_matrix(c);
  ConicParametrization out;
  out.base = base.coords();
  // Complete the base point to a basis with standard vectors.
  std::vector<Vec3> basis;
  for (int i = 0; i < 3 && basis.size() < 2; ++i) {
    Vec3 e{f.zero(), f.zero(), f.zero()};
    e[static_cast<std::size_t>(i)] = f.one();
    if (basis.empty() ? !is_zero(cross(out.base, e)) : !det3(out.base, basis[0], e).is_zero()) basis.push_back(e);
  }
  out.q1 = basis[0];
  out.q2 = basis[1];
  // X(t) = B(P, Q) Q - C(Q) P with Q = q1 + t q2; B is the polar form scaled by 2.
  std::array<UPoly, 3> q;
  for (std::size_t i = 0; i < 3; ++i) q[i] = UPoly(f, {out.q1[i], out.q2[i]});
  const Vec3 ap = a * out.base;
  out.polar_base = ap;
  const UPoly bpq = q[0].scaled(ap[0]) + q[1].scaled(ap[1]) + q[2].scaled(ap[2]);
  const UPoly cq = c.restrict(q);
  for (std::size_t i = 0; i < 3; ++i) out.coords[i] = bpq * q[i] - UPoly(f, {out.base[i]}) * cq;
  return out;
}

Vec3 ConicParametrization::at(const Fe& t) const { return {coords[0].eval(t), coords[1].eval(t), coords[2].eval(t)}; }

std::optional<Fe> ConicParametrization::parameter_of(const Vec3& x) const {
  if (is_zero(cross(x, base))) {
    // The base point is reached along its tangent, where B(P, q1 + t q2) = 0.
    const Fe b1 = dot(polar_base, q1);
    const Fe b2 = dot(polar_base, q2);
    if (b2.is_zero()) return std::nullopt;
    return -b1 / b2;
  }
  // X(t) = -C(Q) P + B(P, Q) (q1 + t q2); read off t by Cramer's rule.
  const Fe d = det3(base, q1, q2);
  const Fe c1 = det3(base, x, q2) / d;
  const Fe c2 = det3(base, q1, x) / d;
  if (c1.is_zero()) return std::nullopt;
  return c2 / c1;
}

Fe cross_ratio(const Field& f, std::span<const std::optional<Fe>, 4> t) {
  auto diff = [&](int i, int j) -> std::optional<Fe> {
    const auto& a = t[static_cast<std::size_t>(i)];
    const auto& b = t[static_cast<std::size_t>(j)];
    if (!a || !b) return std::nullopt;  // the factor cancels against its partner
    return *a - *b;
  };
  Fe num = f.one();
  Fe den = f.one();
  for (auto [i, j] : {std::pair{0, 2}, {1, 3}}) {
    if (auto d = diff(i, j)) num *= *d;
  }
  for (auto [i, j] : {std::pair{0, 3}, {1, 2}}) {
    if (auto d = diff(i, j)) den *= *d;
  }
  if (den.is_zero()) throw Error(Errc::DegeneratePoints, "parameters coincide");
  return num / den;
}

Fe j_from_lambda(const Fe& l) {
  const Fe one = l.pow(0ULL);
  const Fe den = l * l * (l - one) * (l - one);
  if (den.is_zero()) throw Error(Errc::DegeneratePoints, "cross-ratio is 0 or 1");
  const Fe s = l * l - l + one;
  return s * s * s * (one + one).pow(8ULL) / den;
}

Fe j_from_four_points(const Field& f, std::span<const std::optional<Fe>, 4> t) {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const bool both_inf = !t[i] && !t[j];
      if (both_inf || (t[i] && t[j] && *t[i] == *t[j])) throw Error(Errc::DegeneratePoints, "parameters coincide");
    }
  }
  return j_from_lambda(cross_ratio(f, t));
}

}  // namespace flexline
