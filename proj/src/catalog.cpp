#include "flexline/catalog.hpp"

#include <array>

#include "flexline/error.hpp"

namespace flexline {

namespace {

constexpr std::array<std::pair<CurveId, std::string_view>, 11> kNames{{{CurveId::F, "F"},
                                                                      {CurveId::K, "K"},
                                                                      {CurveId::K1, "K1"},
                                                                      {CurveId::K2, "K2"},
                                                                      {CurveId::K3, "K3"},
                                                                      {CurveId::Cplus, "Cplus"},
                                                                      {CurveId::Cminus, "Cminus"},
                                                                      {CurveId::V, "V"},
                                                                      {CurveId::Vu, "Vu"},
                                                                      {CurveId::Ec313a, "Ec313a"},
                                                                      {CurveId::Ec313b, "Ec313b"}}};

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  const auto m = static_cast<std::int64_t>(p);
  return ((v % m) + m) % m;
}

Mat3 monomial_map(const Field& f, const std::array<int, 3>& source, const std::array<Fe, 3>& scale) {
  // Output coordinate r is scale[r] times input coordinate source[r].
  Mat3 m = Mat3::zero(f);
  for (int r = 0; r < 3; ++r) m(r, source[static_cast<std::size_t>(r)]) = scale[static_cast<std::size_t>(r)];
  return m;
}

// Smallest field holding a primitive 4th root of unity and, optionally, a
// 4th root of u; returns (field, i, s).
struct Roots4 {
  Field field;
  Fe i;
  std::optional<Fe> s;
};

Roots4 fourth_roots(const Field& base, std::optional<std::int64_t> u) {
  Roots4 out;
  if (u) {
    const auto s = find_nth_root(base, base.from_int(*u), 4);
    const auto i = find_nth_root(s.field, s.field.one(), 4, true);
    out.field = i.field;
    out.i = i.root;
    out.s = i.from_base(s.root);
  } else {
    const auto i = find_nth_root(base, base.one(), 4, true);
    out.field = i.field;
    out.i = i.root;
  }
  return out;
}

}  // namespace

std::string_view curve_id_name(CurveId id) {
  for (const auto& [k, v] : kNames) {
    if (k == id) return v;
  }
  return "?";
}

CurveId parse_curve_id(std::string_view name) {
  for (const auto& [k, v] : kNames) {
    if (v == name) return k;
  }
  throw Error(Errc::InvalidArgument, "unknown curve '" + std::string(name) + "'");
}

std::string CurveSpec::label() const {
  std::string out(curve_id_name(id));
  if (id == CurveId::Vu && u) out += "(" + std::to_string(p > 0 ? reduce(*u, p) : *u) + ")";
  return out;
}

void check_admissible(const CurveSpec& spec) {
  const Field base = Field::prime(spec.p);  // NotPrime / ExcludedCharacteristic
  (void)base;
  const std::uint32_t p = spec.p;
  auto inadmissible = [&](const std::string& why) {
    throw Error(Errc::InadmissibleCharacteristic, spec.label() + " at p = " + std::to_string(p) + ": " + why);
  };
  switch (spec.id) {
    case CurveId::F:
      break;
    case CurveId::K:
    case CurveId::K1:
      if (p == 5) inadmissible("K is singular in characteristic 5");
      break;
    case CurveId::K2:
    case CurveId::K3:
      if (p != 13) inadmissible("K2 and K3 are the characteristic-13 companions of K");
      break;
    case CurveId::Cplus:
    case CurveId::Cminus:
      if (p == 7) inadmissible("C+ and C- are singular in characteristic 7");
      break;
    case CurveId::V:
      if (p == 7) inadmissible("V is singular in characteristic 7");
      break;
    case CurveId::Vu: {
      if (!spec.u) throw Error(Errc::InvalidArgument, "Vu needs a parameter u");
      const auto u = reduce(*spec.u, p);
      if (u == 0) throw Error(Errc::SingularParameter, "V_0 is singular at [1,0,0]");
      if (u == 1) throw Error(Errc::SingularParameter, "V_1 is the union of two lines and a singular conic");
      break;
    }
    case CurveId::Ec313a:
    case CurveId::Ec313b:
      break;
  }
}

BuiltCurve build(const CurveSpec& spec) {
  check_admissible(spec);
  const Field fp = Field::prime(spec.p);
  BuiltCurve out;
  out.spec = spec;
  out.field = fp;
  HomPoly f;
  switch (spec.id) {
    case CurveId::F:
      f = HomPoly::parse(fp, "x^4 + y^4 + z^4");
      break;
    case CurveId::K:
    case CurveId::K1:
      f = HomPoly::parse(fp, "x^4 + y^4 + z^4 + 3*x^2*y^2 + 3*x^2*z^2 + 3*y^2*z^2");
      break;
    case CurveId::K2:
      f = HomPoly::parse(fp, "x^4 + 3*y^4 + 9*z^4 + 27*x^2*y^2 + 9*x^2*z^2 + 3*y^2*z^2");
      break;
    case CurveId::K3:
      f = HomPoly::parse(fp, "x^4 + 9*y^4 + 3*z^4 + 9*x^2*y^2 + 27*x^2*z^2 + 3*y^2*z^2");
      break;
    case CurveId::Cplus:
    case CurveId::Cminus: {
      const auto root = find_nth_root(fp, fp.from_int(7), 2);
      const Field& k = root.field;
      const Fe s = spec.id == CurveId::Cplus ? root.root : -root.root;
      out.field = k;
      out.sqrt7 = root.root;
      f = HomPoly(k, 4);
      f.set(0, 0, 4, k.from_int(21) + k.from_int(8) * s);
      f.set(1, 1, 2, k.from_int(-6) * (k.from_int(2) + s));
      f.set(3, 0, 1, k.from_int(3) + s);
      f.set(0, 3, 1, k.from_int(3) + s);
      f.set(2, 2, 0, k.from_int(-3));
      break;
    }
    case CurveId::V:
      f = HomPoly::parse(fp, "x^4 - 7*y^4 - z^4 - 42*x^2*y^2 + 12*x*y*z^2");
      break;
    case CurveId::Vu:
    case CurveId::Ec313a: {
      const std::int64_t u = spec.id == CurveId::Vu ? *spec.u : -1;
      f = HomPoly::parse(fp, "y^4 - z^4 - 2*x^2*y^2 - 4*x*y*z^2");
      f.set(4, 0, 0, fp.from_int(u));
      break;
    }
    case CurveId::Ec313b:
      f = HomPoly::parse(fp, "x^4 - y^4 - z^4 - 2*x^2*y^2 - 4*x*y*z^2");
      break;
  }
  out.curve = PlaneQuartic(std::move(f), spec.label());
  return out;
}

std::vector<NamedMap> named_maps(const CurveSpec& spec) {
  check_admissible(spec);
  const std::uint32_t p = spec.p;
  const Field fp = Field::prime(p);
  std::vector<NamedMap> out;
  const Field curve_field = build(spec).field;
  std::optional<Embedding> via;
  auto add = [&](std::string name, const Field& f, const Mat3& m, bool curve, bool config, std::string note) {
    const Embedding e = via ? *via : default_embedding(curve_field, f);
    out.push_back({std::move(name), f, e, ProjMap(m), curve, config, std::move(note)});
  };
  auto swap_xy = [](const Field& f) { return monomial_map(f, {1, 0, 2}, {f.one(), f.one(), f.one()}); };

  switch (spec.id) {
    case CurveId::F: {
      const auto r = fourth_roots(fp, std::nullopt);
      add("swap_xy", fp, swap_xy(fp), true, true, "[x,y,z] -> [y,x,z]");
      add("diag_i", r.field, Mat3::diagonal(r.i, r.field.one(), r.field.one()), true, true, "[x,y,z] -> [ix,y,z]");
      break;
    }
    case CurveId::K:
    case CurveId::K1:
    case CurveId::K2:
    case CurveId::K3: {
      if (spec.id == CurveId::K || spec.id == CurveId::K1) {
        add("swap_xy", fp, swap_xy(fp), true, true, "[x,y,z] -> [y,x,z]");
        add("cycle", fp, monomial_map(fp, {1, 2, 0}, {fp.one(), fp.one(), fp.one()}), true, true, "[x,y,z] -> [y,z,x]");
      }
      if (p == 7) {
        const auto r = fourth_roots(fp, std::nullopt);
        const Field& k = r.field;
        add("gamma7", k, monomial_map(k, {2, 1, 0}, {k.from_int(2).inv(), r.i, k.from_int(-2)}), false, false,
            "[x,y,z] -> [z/2, iy, -2x]; does not stabilize the inflection lines");
      }
      if (p == 13) {
        add("gamma13", fp, monomial_map(fp, {2, 0, 1}, {fp.one(), fp.from_int(3), fp.from_int(3).inv()}), false, true,
            "[x,y,z] -> [z, 3x, y/3]; permutes K1, K2, K3 cyclically");
      }
      break;
    }
    case CurveId::Cplus:
    case CurveId::Cminus: {
      const BuiltCurve b = build(spec);
      const auto z = find_nth_root(b.field, b.field.one(), 3, true);
      const Field& k = z.field;
      via = z.from_base;
      add("rho_zeta", k, Mat3::diagonal(z.root, z.root.inv(), k.one()), true, true, "[x,y,z] -> [zeta x, y/zeta, z]");
      via.reset();
      add("swap_xy", b.field, swap_xy(b.field), true, true, "[x,y,z] -> [y,x,z]");
      break;
    }
    case CurveId::V: {
      const auto r = fourth_roots(fp, std::nullopt);
      add("rho_i", r.field, Mat3::diagonal(r.i, -r.i, r.field.one()), true, true, "[x,y,z] -> [ix, -iy, z]");
      break;
    }
    case CurveId::Vu:
    case CurveId::Ec313a:
    case CurveId::Ec313b: {
      const std::int64_t u = spec.id == CurveId::Vu ? reduce(*spec.u, p) : static_cast<std::int64_t>(p) - 1;
      const auto r = fourth_roots(fp, u);
      const Field& k = r.field;
      add("rho_i", k, Mat3::diagonal(r.i, -r.i, k.one()), true, true, "[x,y,z] -> [ix, -iy, z]");
      if (spec.id != CurveId::Ec313b) {
        add("sigma_s", k, monomial_map(k, {1, 0, 2}, {r.s->inv(), *r.s, k.one()}), true, true,
            "[x,y,z] -> [y/s, sx, z] with s^4 = u");
      }
      if (u == static_cast<std::int64_t>(p) - 1) {
        add("swap_xy", fp, swap_xy(fp), false, p == 13,
            "[x,y,z] -> [y,x,z]; exchanges the two curves -x^4+y^4-... and x^4-y^4-...");
      }
      break;
    }
  }
  return out;
}

std::string_view provenance_name(Provenance p) { return p == Provenance::Stated ? "stated" : "carried-over"; }

ExpectedProfile expected_profile(const CurveSpec& spec) {
  check_admissible(spec);
  const std::uint32_t p = spec.p;
  const Field fp = Field::prime(p);
  ExpectedProfile e;
  e.provenance = (p == 7 || p == 13) ? Provenance::Stated : Provenance::CarriedOver;
  const std::map<int, int> s4{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
  const std::map<int, int> s3{{1, 1}, {2, 3}, {3, 2}};
  const std::map<int, int> d4{{1, 1}, {2, 5}, {4, 2}};
  const std::map<int, int> d8{{1, 1}, {2, 9}, {4, 2}, {8, 4}};
  switch (spec.id) {
    case CurveId::F:
      e.hyperflexes = 12;
      e.config_group_order = e.curve_group_order = 96;
      e.line_cover = 3;
      break;
    case CurveId::K:
    case CurveId::K1:
    case CurveId::K2:
    case CurveId::K3:
      e.hyperflexes = 12;
      e.curve_group_order = 24;
      e.curve_group_histogram = s4;
      e.config_group_order = p == 13 ? 72 : 24;
      if (p != 13) e.config_group_histogram = s4;
      e.line_cover_above_three = true;
      break;
    case CurveId::Cplus:
    case CurveId::Cminus:
      e.hyperflexes = 9;
      e.simple_flexes = 6;
      e.config_group_order = e.curve_group_order = 6;
      e.curve_group_histogram = e.config_group_histogram = s3;
      break;
    case CurveId::V:
      e.hyperflexes = 8;
      e.simple_flexes = 8;
      e.config_group_order = e.curve_group_order = 8;
      e.curve_group_histogram = e.config_group_histogram = d4;
      e.hyperflex_no_conic = true;
      e.simple_flex_conic = HomPoly::parse(fp, "x*y + z^2");
      break;
    case CurveId::Vu:
    case CurveId::Ec313a:
    case CurveId::Ec313b: {
      const std::int64_t u = spec.id == CurveId::Vu ? reduce(*spec.u, p) : static_cast<std::int64_t>(p) - 1;
      e.hyperflexes = 8;
      e.simple_flexes = 8;
      e.curve_group_order = 8;
      e.curve_group_histogram = d4;
      const bool excess = p == 13 && u == 12;
      e.config_group_order = excess ? 16 : 8;
      e.config_group_histogram = excess ? d8 : d4;
      if (spec.id != CurveId::Ec313b) {
        e.hyperflex_conic = HomPoly::parse(fp, "z^2 + x*y");
        HomPoly cs(fp, 2);
        cs.set(0, 0, 2, fp.from_int(27 * u + 5));
        cs.set(1, 1, 0, fp.from_int(32));
        e.simple_flex_conic = cs;
      }
      break;
    }
  }
  return e;
}

bool is_vu_exceptional(const CurveSpec& spec) {
  std::int64_t u = 0;
  if (spec.id == CurveId::Vu && spec.u) {
    u = reduce(*spec.u, spec.p);
  } else if (spec.id == CurveId::Ec313a) {
    u = static_cast<std::int64_t>(spec.p) - 1;
  } else {
    return false;
  }
  return reduce(81 * u - 1, spec.p) == 0;
}

std::vector<std::int64_t> vu_parameters(std::uint32_t p) {
  std::vector<std::int64_t> out;
  if (p <= 37) {
    for (std::int64_t u = 2; u < static_cast<std::int64_t>(p); ++u) out.push_back(u);
    return out;
  }
  for (std::int64_t u = 2; u <= 37; ++u) out.push_back(u);
  out.push_back(static_cast<std::int64_t>(p) - 1);
  return out;
}

std::vector<CurveSpec> theorem_curves(std::uint32_t p) {
  std::vector<CurveSpec> candidates;
  candidates.push_back({CurveId::F, p, {}});
  if (p == 13) {
    for (auto id : {CurveId::K1, CurveId::K2, CurveId::K3}) candidates.push_back({id, p, {}});
  } else {
    candidates.push_back({CurveId::K, p, {}});
  }
  candidates.push_back({CurveId::Cplus, p, {}});
  candidates.push_back({CurveId::Cminus, p, {}});
  candidates.push_back({CurveId::V, p, {}});
  for (auto u : vu_parameters(p)) candidates.push_back({CurveId::Vu, p, u});
  candidates.push_back({CurveId::Ec313b, p, {}});
  std::vector<CurveSpec> out;
  for (const auto& c : candidates) {
    try {
      check_admissible(c);
      out.push_back(c);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace flexline
