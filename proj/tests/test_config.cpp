#include <functional>
#include <random>

#include "doctest.h"
#include "flexline/catalog.hpp"
#include "flexline/config.hpp"
#include "flexline/error.hpp"
#include "support/oracles.hpp"

using namespace flexline;

namespace {

struct Analyzed {
  BuiltCurve built;
  InflectionScheme scheme;
  LineConfiguration config;
};

Analyzed analyzed(const CurveSpec& spec) {
  Analyzed a;
  a.built = build(spec);
  a.scheme = inflection_scheme(a.built.curve);
  a.config = LineConfiguration::from_flexes(a.scheme.field, a.scheme.flexes);
  return a;
}

ProjMap random_map(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat3 m;
    for (auto& c : m.m) c = f.from_index(rng() % static_cast<std::uint64_t>(f.size()));
    if (!m.det().is_zero()) return ProjMap(m);
  }
}

}  // namespace

TEST_CASE("configurations from flex records") {
  const auto f = analyzed({CurveId::F, 17, {}});
  CHECK(f.config.size() == 12);
  CHECK(f.config.weight_histogram() == std::map<int, int>{{2, 12}});
  const auto c = analyzed({CurveId::Cplus, 19, {}});
  CHECK(c.config.weight_histogram() == std::map<int, int>{{1, 6}, {2, 9}});
  CHECK(c.config.total_weight() == 24);
  CHECK(LineConfiguration::from_flexes(Field::prime(7), {}).empty());
}

TEST_CASE("configuration JSON round trip") {
  const auto a = analyzed({CurveId::V, 11, {}});
  const auto j = a.config.to_json();
  CHECK(j["points"].size() == a.config.size());
  const auto back = LineConfiguration::from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.field() == a.config.field());
  CHECK(back == a.config);
  CHECK_THROWS_AS(LineConfiguration::from_json(nlohmann::json::parse(R"({"field": "7", "points": [{"dual": [1, 2]}]})")),
                  Error);
}

TEST_CASE("transporters: identity, composition, degenerate input") {
  std::mt19937_64 rng(3);
  const Field f = Field::prime(11);
  const auto a = oracle::random_configuration(f, 7, rng);
  const auto self = transporters(a, a);
  CHECK(std::binary_search(self.begin(), self.end(), ProjMap::identity(f)));

  const ProjMap g1 = random_map(f, rng);
  const ProjMap g2 = random_map(f, rng);
  const auto b = a.transformed(g1);
  const auto c = b.transformed(g2);
  const auto ab = transporters(a, b);
  const auto bc = transporters(b, c);
  const auto ac = transporters(a, c);
  CHECK(std::binary_search(ab.begin(), ab.end(), g1));
  for (const auto& x : ab) {
    for (const auto& y : bc) CHECK(std::binary_search(ac.begin(), ac.end(), y * x));
  }

  LineConfiguration collinear(f);
  for (int t = 0; t < 5; ++t) collinear.add(ProjPoint::from_ints(f, 1, t, 0), 1);
  CHECK_THROWS_AS(transporters(collinear, collinear), Error);

  LineConfiguration frame(f);
  for (auto p : {ProjPoint::from_ints(f, 1, 0, 0), ProjPoint::from_ints(f, 0, 1, 0), ProjPoint::from_ints(f, 0, 0, 1),
                 ProjPoint::from_ints(f, 1, 1, 1)}) {
    frame.add(p, 2);
  }
  CHECK(automorphism_group(frame).descriptor.order == 24);
  TransporterOptions small;
  small.group_cap = 5;
  CHECK_THROWS_AS(transporters(frame, frame, small), Error);
}

TEST_CASE("oracle: transporters against all of PGL3(F_q)") {
  std::mt19937_64 rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = Field::prime(trial < 14 ? 5 : 7);
    const std::size_t size = 4 + static_cast<std::size_t>(trial % 5);
    const auto a = oracle::random_configuration(f, size, rng);
    // Half the targets are images of A, so the answer is usually nonempty.
    const auto b = trial % 2 == 0 ? a.transformed(random_map(f, rng)) : oracle::random_configuration(f, size, rng);
    CAPTURE(trial);
    const auto fast = transporters(a, b);
    CHECK(fast == oracle::pgl3_transporters(a, b));
    nonempty += fast.empty() ? 0 : 1;
  }
  CHECK(nonempty >= 10);
}

TEST_CASE("automorphism groups of catalog configurations") {
  const auto f = analyzed({CurveId::F, 17, {}});
  const auto gf = automorphism_group(f.config);
  CHECK(gf.descriptor.order == 96);
  CHECK(gf.verify_closure());

  const auto k13 = analyzed({CurveId::K, 13, {}});
  const auto g13 = automorphism_group(k13.config);
  CHECK(g13.descriptor.order == 72);
  const auto a13 = curve_automorphisms(k13.built.curve.form(), k13.scheme.from_base, g13);
  CHECK(a13.descriptor.order == 24);
  CHECK(a13.descriptor.name() == "S4");
  for (const auto& m : a13.elements) CHECK(g13.contains(m));

  const auto k7 = analyzed({CurveId::K, 7, {}});
  const auto g7 = automorphism_group(k7.config);
  CHECK(g7.descriptor.order == 24);
  CHECK(curve_automorphisms(k7.built.curve.form(), k7.scheme.from_base, g7).descriptor.order == 24);

  const auto vu = analyzed({CurveId::Vu, 17, 2});
  const auto gv = automorphism_group(vu.config);
  CHECK(gv.descriptor.name() == "D4");
  CHECK(gv.descriptor.element_orders == std::map<int, int>{{1, 1}, {2, 5}, {4, 2}});

  const auto vm = analyzed({CurveId::Vu, 13, 12});
  const auto gm = automorphism_group(vm.config);
  CHECK(gm.descriptor.name() == "D8");
  const auto am = curve_automorphisms(vm.built.curve.form(), vm.scheme.from_base, gm);
  CHECK(am.descriptor.order == 8);
  const Field& l = vm.scheme.field;
  const ProjMap swap(Mat3::from_ints(l, {0, 1, 0, 1, 0, 0, 0, 0, 1}));
  CHECK(gm.contains(swap));
  CHECK(!am.contains(swap));
}

TEST_CASE("equal and inequivalent configurations") {
  const auto k1 = analyzed({CurveId::K1, 13, {}});
  const auto k2 = analyzed({CurveId::K2, 13, {}});
  REQUIRE(k1.config.field() == k2.config.field());
  CHECK(k1.config == k2.config);
  CHECK(transporters(k1.config, k2.config) == automorphism_group(k1.config).elements);

  // 7 = 10^2 in F_31, so both curves live over F_31.
  const auto cp = analyzed({CurveId::Cplus, 31, {}});
  const auto cm = analyzed({CurveId::Cminus, 31, {}});
  const Field common = compositum(cp.config.field(), cm.config.field());
  const auto a = cp.config.mapped(default_embedding(cp.config.field(), common));
  const auto b = cm.config.mapped(default_embedding(cm.config.field(), common));
  CHECK(transporters(a, b).empty());
}

TEST_CASE("support signatures") {
  CHECK(support_signature(analyzed({CurveId::F, 13, {}}).config).line_cover == 3);
  CHECK(support_signature(analyzed({CurveId::K, 11, {}}).config).line_cover > 3);
  const auto vu = support_signature(analyzed({CurveId::Vu, 31, 2}).config);
  CHECK(vu.hyperflex_conic_rank == 5);
  REQUIRE(vu.hyperflex_conic);
  CHECK(proportional(*vu.hyperflex_conic, HomPoly::parse(vu.hyperflex_conic->field(), "z^2 + x*y")));
  const auto v = support_signature(analyzed({CurveId::V, 11, {}}).config);
  CHECK(v.hyperflex_conic_rank == 6);
  CHECK(!v.hyperflex_conic);

  // Brute force over all subsets of lines for a small configuration.
  const Field f = Field::prime(7);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = oracle::random_configuration(f, 8, rng);
    const auto pts = c.support();
    std::vector<Vec3> lines;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) lines.push_back(cross(pts[i].coords(), pts[j].coords()));
    }
    // Eight points never need more than four lines; try sizes in order.
    auto covers = [&](const std::vector<std::size_t>& pick) {
      return std::all_of(pts.begin(), pts.end(), [&](const ProjPoint& p) {
        return std::any_of(pick.begin(), pick.end(), [&](std::size_t l) { return dot(lines[l], p.coords()).is_zero(); });
      });
    };
    int best = 0;
    for (int k = 1; k <= 4 && best == 0; ++k) {
      std::vector<std::size_t> pick;
      std::function<bool(std::size_t)> choose = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == k) return covers(pick);
        for (std::size_t l = from; l < lines.size(); ++l) {
          pick.push_back(l);
          if (choose(l + 1)) return true;
          pick.pop_back();
        }
        return false;
      };
      if (choose(0)) best = k;
    }
    CHECK(support_signature(c).line_cover == best);
  }
}

TEST_CASE("group descriptors") {
  const Field f = Field::prime(13);
  std::vector<ProjMap> c2{ProjMap::identity(f), ProjMap(Mat3::diagonal(f.from_int(-1), f.one(), f.one()))};
  const auto g = make_group(f, c2);
  CHECK(g.verify_closure());
  CHECK(g.descriptor.abelian);
  CHECK(g.descriptor.name().empty());
  CHECK(element_order(ProjMap(Mat3::diagonal(f.from_int(5), f.one(), f.one())), 100) == 4);
  CHECK(!make_group(f, {c2[1]}).verify_closure());
}
