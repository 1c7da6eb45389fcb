#include "flexline/curve.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "flexline/error.hpp"

namespace flexline {

namespace {

Fe random_element(const Field& f, std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(f.degree()));
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % f.characteristic());
  return f.from_coeffs(c);
}

Mat3 random_change(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat3 m;
    for (auto& c : m.m) c = random_element(f, rng);
    if (!m.det().is_zero()) return m;
  }
}

// F(x0, y0, z) as a polynomial in z.
UPoly fiber_poly(const HomPoly& f, const Fe& x0, const Fe& y0) {
  const Field& fld = f.field();
  return f.restrict({UPoly(fld, {x0}), UPoly(fld, {y0}), UPoly(fld, {fld.zero(), fld.one()})});
}

int lcm_of_factor_degrees(const UPoly& g) {
  int d = 1;
  for (const auto& fac : factor(g)) d = std::lcm(d, fac.poly.degree());
  return d;
}

struct FiberSeed {
  Fe x0;
  Fe y0;
  int multiplicity;
};

}  // namespace

PlaneQuartic::PlaneQuartic(HomPoly f, std::string label) : f_(std::move(f)), label_(std::move(label)) {
  if (f_.degree() != 4 || f_.is_zero()) throw Error(Errc::InvalidArgument, "a plane quartic needs a nonzero form of degree 4");
}

std::uint64_t form_seed(const HomPoly& f, std::uint64_t seed_override) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  mix(f.field().characteristic());
  mix(static_cast<std::uint64_t>(f.field().degree()));
  for (auto m : f.field().modulus()) mix(m);
  for (const auto& [e, c] : f.terms()) {
    mix(static_cast<std::uint64_t>(e[0] * 64 + e[1] * 8 + e[2]));
    for (int i = 0; i < f.field().degree(); ++i) mix(c.coeff(i));
  }
  mix(seed_override);
  return h;
}

Intersection intersect(const HomPoly& f, const HomPoly& g, const EliminationOptions& opts) {
  const Field& base = f.field();
  std::mt19937_64 rng(form_seed(f * g, opts.seed_override));
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    const Mat3 m = random_change(base, rng);
    const HomPoly fp = substitute(f, m);
    const HomPoly gp = substitute(g, m);
    if (fp.coeff(0, 0, f.degree()).is_zero() || gp.coeff(0, 0, g.degree()).is_zero()) continue;
    const BinaryForm r = resultant_z(fp, gp, ResultantMode::RequireMonicInZ);
    if (r.is_zero()) continue;

    // Smallest field holding every projection root.
    int rel = lcm_of_factor_degrees(r.at_y1);
    while (true) {
      const int total = base.degree() * rel;
      if (total > opts.degree_cap) {
        throw Error(Errc::DegreeOverflow, "intersection needs degree " + std::to_string(total) + " over F_" +
                                              std::to_string(base.characteristic()));
      }
      Intersection out;
      out.field = rel == 1 ? base : Field::canonical(base.characteristic(), total);
      out.from_base = default_embedding(base, out.field);
      out.coordinate_change = m.mapped(out.from_base);
      out.attempts = attempt;
      const Field& big = out.field;
      const HomPoly fl = fp.mapped(out.from_base);
      const HomPoly gl = gp.mapped(out.from_base);

      std::vector<FiberSeed> seeds;
      if (r.multiplicity_at_infinity() > 0) seeds.push_back({big.one(), big.zero(), r.multiplicity_at_infinity()});
      if (r.at_y1.degree() > 0) {
        for (const auto& rm : roots_with_multiplicity(r.at_y1.mapped(out.from_base))) {
          seeds.push_back({rm.root, big.one(), rm.multiplicity});
        }
      }

      int grow = 1;
      for (const auto& s : seeds) {
        const UPoly common = gcd(fiber_poly(fl, s.x0, s.y0), fiber_poly(gl, s.x0, s.y0));
        const auto roots = roots_with_multiplicity(common);
        int found = 0;
        for (const auto& rm : roots) found += rm.multiplicity;
        if (found < common.degree()) {
          grow = std::lcm(grow, lcm_of_factor_degrees(common));
          continue;
        }
        Fiber fiber;
        fiber.resultant_multiplicity = s.multiplicity;
        for (const auto& rm : roots) {
          fiber.points.emplace_back(out.coordinate_change * Vec3{s.x0, s.y0, rm.root});
        }
        out.fibers.push_back(std::move(fiber));
      }
      if (grow == 1) return out;
      rel *= grow;
    }
  }
  throw Error(Errc::EliminationDegenerate,
              "no usable projection after " + std::to_string(opts.max_attempts) + " coordinate changes");
}

bool is_smooth(const PlaneQuartic& c, const EliminationOptions& opts) {
  const HomPoly& f = c.form();
  const Field& base = f.field();
  std::mt19937_64 rng(form_seed(f, opts.seed_override ^ 0x5107ULL));
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    const Mat3 m = random_change(base, rng);
    const HomPoly fp = substitute(f, m);
    const HomPoly a = fp.partial(0);
    const HomPoly b = fp.partial(1);
    const HomPoly cz = fp.partial(2);
    if (a.coeff(0, 0, 3).is_zero() || b.coeff(0, 0, 3).is_zero()) continue;
    const BinaryForm r = resultant_z(a, b, ResultantMode::RequireMonicInZ);
    if (r.is_zero()) continue;

    // One representative per Galois orbit of projection roots suffices.
    auto singular_over = [&](const Embedding& e, const Fe& x0, const Fe& y0) {
      const UPoly common = gcd(fiber_poly(a.mapped(e), x0, y0), fiber_poly(b.mapped(e), x0, y0));
      if (common.degree() < 1) return false;
      return gcd(common, fiber_poly(cz.mapped(e), x0, y0)).degree() > 0;
    };
    if (r.multiplicity_at_infinity() > 0) {
      const Embedding id = Embedding::identity(base);
      if (singular_over(id, base.one(), base.zero())) return false;
    }
    if (r.at_y1.degree() > 0) {
      for (const auto& fac : factor(r.at_y1)) {
        const int total = base.degree() * fac.poly.degree();
        if (total > opts.degree_cap) {
          throw Error(Errc::DegreeOverflow, "smoothness test needs degree " + std::to_string(total));
        }
        const Field fld = fac.poly.degree() == 1 ? base : Field::canonical(base.characteristic(), total);
        const Embedding e = default_embedding(base, fld);
        const Fe x0 = roots_with_multiplicity(fac.poly.mapped(e)).front().root;
        if (singular_over(e, x0, fld.one())) return false;
      }
    }
    return true;
  }
  throw Error(Errc::EliminationDegenerate, "partial derivatives could not be separated by a projection");
}

ProjPoint tangent_line(const HomPoly& f, const ProjPoint& p) {
  const Vec3 grad = f.gradient_at(p.coords());
  if (is_zero(grad)) throw Error(Errc::SingularPoint, "gradient vanishes");
  return ProjPoint(grad);
}

int contact_order(const HomPoly& f, const ProjPoint& line, const ProjPoint& p) {
  const Field& fld = f.field();
  // A second point of the line, distinct from P.
  Vec3 q;
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i) {
    Vec3 e{fld.zero(), fld.zero(), fld.zero()};
    e[static_cast<std::size_t>(i)] = fld.one();
    q = cross(line.coords(), e);
    found = !is_zero(q) && !is_zero(cross(q, p.coords()));
  }
  if (!found) throw Error(Errc::InvalidArgument, "degenerate line");
  const UPoly r = f.along(p.coords(), q);
  if (r.is_zero()) throw Error(Errc::LineIsComponent, "the line is a component of the curve");
  int order = 0;
  while (order <= r.degree() && r.coeff(order).is_zero()) ++order;
  return order;
}

int InflectionScheme::total_weight() const {
  int s = 0;
  for (const auto& r : flexes) s += r.weight;
  return s;
}

int InflectionScheme::count_weight(int w) const {
  return static_cast<int>(std::count_if(flexes.begin(), flexes.end(), [w](const FlexRecord& r) { return r.weight == w; }));
}

InflectionScheme inflection_scheme(const PlaneQuartic& c, const EliminationOptions& opts) {
  const HomPoly& f = c.form();
  const HomPoly h = hessian(f);
  if (h.is_zero()) throw Error(Errc::HessianVanishes, "the Hessian vanishes identically");
  const Intersection inter = intersect(f, h, opts);
  InflectionScheme out;
  out.field = inter.field;
  out.from_base = inter.from_base;
  out.attempts = inter.attempts;
  const HomPoly fl = f.mapped(inter.from_base);
  for (const auto& fiber : inter.fibers) {
    int fiber_weight = 0;
    for (const auto& p : fiber.points) {
      FlexRecord rec;
      rec.point = p;
      rec.line = tangent_line(fl, p);
      rec.contact = contact_order(fl, rec.line, p);
      rec.weight = rec.contact - 2;
      if (rec.contact > 4) throw Error(Errc::InvalidArgument, "contact above 4 on a quartic");
      if (rec.contact < 3) {
        out.anomalies.push_back("point " + p.format(out.field) + " of V(F,H) has contact " +
                                std::to_string(rec.contact));
      }
      fiber_weight += rec.weight;
      out.flexes.push_back(std::move(rec));
    }
    if (fiber_weight != fiber.resultant_multiplicity) {
      out.wild = true;
      out.anomalies.push_back("fiber weight " + std::to_string(fiber_weight) + " differs from resultant multiplicity " +
                              std::to_string(fiber.resultant_multiplicity));
    }
  }
  std::sort(out.flexes.begin(), out.flexes.end(),
            [](const FlexRecord& a, const FlexRecord& b) { return a.point < b.point; });
  return out;
}

}  // namespace flexline
