#include "flexline/mpoly.hpp"

#include <cctype>
#include <charconv>

#include "flexline/error.hpp"

namespace flexline {

namespace {

std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

// Exponents in storage order.
std::vector<Exponent> exponents(int d) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(d));
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

int parse_exponent(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw Error(Errc::ParseError, "bad exponent '" + std::string(s) + "'");
  }
  return v;
}

std::vector<UPoly> powers(const UPoly& base, int n) {
  std::vector<UPoly> out{UPoly(base.field(), {base.field().one()})};
  for (int i = 1; i <= n; ++i) out.push_back(out.back() * base);
  return out;
}

}  // namespace

HomPoly::HomPoly(Field field, int degree) : field_(std::move(field)), degree_(degree) {
  if (degree < 0) throw Error(Errc::InvalidArgument, "negative degree");
  coeffs_.assign(monomial_count(degree), field_.zero());
}

std::size_t HomPoly::index(int a, int b) const {
  const int s = degree_ - a;
  return static_cast<std::size_t>(s * (s + 1) / 2 + (s - b));
}

HomPoly HomPoly::monomial(const Field& field, const Fe& c, int a, int b, int cz) {
  HomPoly r(field, a + b + cz);
  r.set(a, b, cz, c);
  return r;
}

HomPoly HomPoly::variable(const Field& field, int i) {
  return monomial(field, field.one(), i == 0 ? 1 : 0, i == 1 ? 1 : 0, i == 2 ? 1 : 0);
}

HomPoly HomPoly::parse(const Field& field, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");
  // Split into signed terms at top-level + and -.
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::string cur;
  bool negative = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    const bool after_caret = i > 0 && s[i - 1] == '^';
    if (depth == 0 && (ch == '+' || ch == '-') && !after_caret) {
      if (!cur.empty()) terms.emplace_back(negative, cur);
      else if (i > 0) throw Error(Errc::ParseError, "dangling sign in '" + s + "'");
      cur.clear();
      negative = ch == '-';
      continue;
    }
    cur.push_back(ch);
  }
  if (cur.empty()) throw Error(Errc::ParseError, "dangling sign in '" + s + "'");
  terms.emplace_back(negative, cur);

  HomPoly out;
  bool first = true;
  for (const auto& [neg, term] : terms) {
    Fe c = field.one();
    Exponent e{0, 0, 0};
    for (auto factor : split_top_level(term, '*')) {
      if (factor.empty()) throw Error(Errc::ParseError, "empty factor in '" + term + "'");
      const char head = factor.front();
      if (head == 'x' || head == 'y' || head == 'z') {
        int power = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^') throw Error(Errc::ParseError, "bad factor '" + std::string(factor) + "'");
          power = parse_exponent(factor.substr(2));
        }
        e[static_cast<std::size_t>(head - 'x')] += power;
        continue;
      }
      if (head == '(') {
        if (factor.back() != ')') throw Error(Errc::ParseError, "unbalanced '" + std::string(factor) + "'");
        factor = factor.substr(1, factor.size() - 2);
      }
      c *= field.parse_element(factor);
    }
    if (neg) c = -c;
    const int d = e[0] + e[1] + e[2];
    if (first) {
      out = HomPoly(field, d);
      first = false;
    } else if (d != out.degree()) {
      throw Error(Errc::ParseError, "polynomial is not homogeneous");
    }
    out.add(e[0], e[1], e[2], c);
  }
  return out;
}

bool HomPoly::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Fe HomPoly::coeff(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) return field_.zero();
  return coeffs_[index(a, b)];
}

void HomPoly::set(int a, int b, int c, const Fe& value) {
  if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) throw Error(Errc::InvalidArgument, "monomial degree mismatch");
  coeffs_[index(a, b)] = value;
}

void HomPoly::add(int a, int b, int c, const Fe& value) {
  if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) throw Error(Errc::InvalidArgument, "monomial degree mismatch");
  coeffs_[index(a, b)] += value;
}

std::vector<std::pair<Exponent, Fe>> HomPoly::terms() const {
  std::vector<std::pair<Exponent, Fe>> out;
  const auto exps = exponents(degree_);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!coeffs_[i].is_zero()) out.emplace_back(exps[i], coeffs_[i]);
  }
  return out;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  if (o.degree_ != degree_) throw Error(Errc::InvalidArgument, "adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) {
  if (o.degree_ != degree_) throw Error(Errc::InvalidArgument, "subtracting forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  HomPoly r(a.field_, a.degree_ + b.degree_);
  const auto ta = a.terms();
  const auto tb = b.terms();
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) r.coeffs_[r.index(ea[0] + eb[0], ea[1] + eb[1])] += ca * cb;
  }
  return r;
}

HomPoly HomPoly::scaled(const Fe& c) const {
  HomPoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Fe HomPoly::eval(const Fe& x, const Fe& y, const Fe& z) const {
  std::vector<Fe> px{field_.one()}, py{field_.one()}, pz{field_.one()};
  for (int i = 0; i < degree_; ++i) {
    px.push_back(px.back() * x);
    py.push_back(py.back() * y);
    pz.push_back(pz.back() * z);
  }
  Fe acc = field_.zero();
  const auto exps = exponents(degree_);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const auto& e = exps[i];
    acc += coeffs_[i] * px[static_cast<std::size_t>(e[0])] * py[static_cast<std::size_t>(e[1])] *
           pz[static_cast<std::size_t>(e[2])];
  }
  return acc;
}

HomPoly HomPoly::partial(int var) const {
  if (degree_ == 0) return HomPoly(field_, 0);
  HomPoly r(field_, degree_ - 1);
  for (const auto& [e, c] : terms()) {
    const int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponent f = e;
    f[static_cast<std::size_t>(var)] -= 1;
    r.add(f[0], f[1], f[2], c * field_.from_int(k));
  }
  return r;
}

Vec3 HomPoly::gradient_at(const Vec3& v) const { return {partial(0).eval(v), partial(1).eval(v), partial(2).eval(v)}; }

UPoly HomPoly::restrict(const std::array<UPoly, 3>& coords) const {
  const auto px = powers(coords[0], degree_);
  const auto py = powers(coords[1], degree_);
  const auto pz = powers(coords[2], degree_);
  UPoly acc(field_);
  for (const auto& [e, c] : terms()) {
    acc += (px[static_cast<std::size_t>(e[0])] * py[static_cast<std::size_t>(e[1])] *
            pz[static_cast<std::size_t>(e[2])])
               .scaled(c);
  }
  return acc;
}

UPoly HomPoly::along(const Vec3& p, const Vec3& q) const {
  return restrict({UPoly(field_, {p[0], q[0]}), UPoly(field_, {p[1], q[1]}), UPoly(field_, {p[2], q[2]})});
}

HomPoly HomPoly::mapped(const Embedding& e) const {
  HomPoly r(e.target(), degree_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = e(coeffs_[i]);
  return r;
}

HomPoly HomPoly::normalized() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return scaled(c.inv());
  }
  return *this;
}

std::string HomPoly::format() const {
  std::string out;
  for (const auto& [e, c] : terms()) {
    if (!out.empty()) out += " + ";
    const bool compound = field_.degree() > 1 && !c.in_prime_subfield();
    out += compound ? "(" + field_.format(c) + ")" : field_.format(c);
    static constexpr char kVars[] = {'x', 'y', 'z'};
    for (std::size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      out += "*";
      out += kVars[v];
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
  }
  return out.empty() ? "0" : out;
}

bool proportional(const HomPoly& a, const HomPoly& b) {
  if (a.degree() != b.degree() || a.is_zero() || b.is_zero()) return false;
  return a.normalized() == b.normalized();
}

HomPoly hessian(const HomPoly& f) {
  if (f.degree() < 2) throw Error(Errc::InvalidArgument, "Hessian needs degree at least 2");
  std::array<HomPoly, 3> d1{f.partial(0), f.partial(1), f.partial(2)};
  HomPoly h[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) h[i][j] = d1[static_cast<std::size_t>(i)].partial(j);
  }
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

namespace {

int z_degree(const HomPoly& f) {
  int best = -1;
  for (const auto& [e, c] : f.terms()) best = std::max(best, e[2]);
  return best;
}

// Coefficient of z^j with y = 1, as a polynomial in x.
UPoly z_coefficient(const HomPoly& f, int j) {
  const int rest = f.degree() - j;
  std::vector<Fe> c(static_cast<std::size_t>(rest) + 1, f.field().zero());
  for (int a = 0; a <= rest; ++a) c[static_cast<std::size_t>(a)] = f.coeff(a, rest - a, j);
  return UPoly(f.field(), std::move(c));
}

// Fraction-free elimination; every division is exact.
UPoly bareiss_det(std::vector<std::vector<UPoly>> m, const Field& field) {
  const std::size_t n = m.size();
  if (n == 0) return UPoly(field, {field.one()});
  bool negate = false;
  UPoly prev(field, {field.one()});
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return UPoly(field);
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

BinaryForm resultant_z(const HomPoly& f, const HomPoly& g, ResultantMode mode) {
  const Field& field = f.field();
  if (f.is_zero() || g.is_zero()) return {0, UPoly(field)};
  const int m = z_degree(f);
  const int n = z_degree(g);
  if (mode == ResultantMode::RequireMonicInZ && (m != f.degree() || n != g.degree())) {
    throw Error(Errc::LeadingCoefficientVanishes, "z^deg is missing; change coordinates first");
  }
  const int size = m + n;
  std::vector<std::vector<UPoly>> syl(static_cast<std::size_t>(size),
                                      std::vector<UPoly>(static_cast<std::size_t>(size), UPoly(field)));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = z_coefficient(f, m - i);
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) {
      syl[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + j)] = z_coefficient(g, n - j);
    }
  }
  BinaryForm out;
  out.degree = f.degree() * n + g.degree() * m - m * n;
  out.at_y1 = bareiss_det(std::move(syl), field);
  return out;
}

HomPoly substitute(const HomPoly& f, const Mat3& m) {
  const Field& field = f.field();
  std::array<std::vector<HomPoly>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    HomPoly lin(field, 1);
    lin.set(1, 0, 0, m(i, 0));
    lin.set(0, 1, 0, m(i, 1));
    lin.set(0, 0, 1, m(i, 2));
    auto& v = pw[static_cast<std::size_t>(i)];
    v.push_back(HomPoly::monomial(field, field.one(), 0, 0, 0));
    for (int k = 1; k <= f.degree(); ++k) v.push_back(v.back() * lin);
  }
  HomPoly out(field, f.degree());
  for (const auto& [e, c] : f.terms()) {
    out += (pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
            pw[2][static_cast<std::size_t>(e[2])])
               .scaled(c);
  }
  return out;
}

HomPoly transform(const HomPoly& f, const Mat3& m) { return substitute(f, m.inverse()); }

}  // namespace flexline
