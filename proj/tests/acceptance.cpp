// Acceptance run: prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flexline/catalog.hpp"
#include "flexline/cli.hpp"
#include "flexline/error.hpp"
#include "support/oracles.hpp"

using namespace flexline;

namespace {

constexpr std::uint32_t kMaxPrime = 50;

struct Analyzed {
  CurveSpec spec;
  CurveAnalysis a;
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void fail(std::string s) {
    pass = false;
    problems.push_back(std::move(s));
  }
};

std::string where(const CurveSpec& s) { return s.label() + "@" + std::to_string(s.p); }

std::string join(const std::vector<std::string>& v, std::size_t limit = 12) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out << (i ? "; " : "") << v[i];
  if (v.size() > limit) out << "; ... (" << v.size() << " total)";
  return out.str();
}

void report(int n, const Outcome& o, const std::string& summary) {
  std::cout << "criterion " << n << ' ' << (o.pass ? "PASS" : "FAIL") << ": " << summary;
  if (!o.problems.empty()) std::cout << " | mismatches: " << join(o.problems);
  if (!o.notes.empty()) std::cout << " | " << join(o.notes);
  std::cout << std::endl;
}

bool census_family(CurveId id) { return id != CurveId::Ec313b; }

// Configuration group orders outside characteristic 13.
int generic_group_order(CurveId id) {
  switch (id) {
    case CurveId::F: return 96;
    case CurveId::K: case CurveId::K1: case CurveId::K2: case CurveId::K3: return 24;
    case CurveId::Cplus: case CurveId::Cminus: return 6;
    default: return 8;
  }
}

std::string generic_group_name(CurveId id) {
  switch (id) {
    case CurveId::F: return "";
    case CurveId::K: case CurveId::K1: case CurveId::K2: case CurveId::K3: return "S4";
    case CurveId::Cplus: case CurveId::Cminus: return "S3";
    default: return "D4";
  }
}

std::pair<int, int> expected_flexes(CurveId id) {
  switch (id) {
    case CurveId::F: case CurveId::K: case CurveId::K1: case CurveId::K2: case CurveId::K3: return {12, 0};
    case CurveId::Cplus: case CurveId::Cminus: return {9, 6};
    default: return {8, 8};
  }
}

std::vector<Analyzed> analyze_catalog() {
  std::vector<Analyzed> out;
  for (std::uint32_t p = 5; p <= kMaxPrime; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& spec : theorem_curves(p)) out.push_back({spec, analyze_curve(spec)});
  }
  return out;
}

Outcome criterion1(const std::vector<Analyzed>& all) {
  Outcome o;
  std::vector<std::string> exceptional;
  for (const auto& [spec, a] : all) {
    if (!census_family(spec.id)) continue;
    const auto [hyper, simple] = expected_flexes(spec.id);
    const int h = a.scheme.count_weight(2);
    const int s = a.scheme.count_weight(1);
    if (a.scheme.total_weight() != 24 || a.scheme.wild) o.fail(where(spec) + " total weight");
    if (h != hyper || s != simple) {
      const std::string msg = where(spec) + " " + std::to_string(h) + "/" + std::to_string(s);
      if (is_vu_exceptional(spec)) {
        exceptional.push_back(msg);
        o.pass = false;
      } else {
        o.fail(msg);
      }
    }
  }
  if (!exceptional.empty()) {
    o.notes.push_back("members with 81u = 1 have 12 hyperflexes and no simple flexes: " + join(exceptional, 20));
  }
  return o;
}

Outcome criterion2(const std::vector<Analyzed>& all) {
  Outcome o;
  std::vector<std::string> excesses;
  std::vector<std::string> exceptional;
  bool k13 = false, v13 = false;
  for (const auto& [spec, a] : all) {
    if (!census_family(spec.id)) continue;
    const auto& cg = a.config_group.descriptor;
    const auto& ag = a.curve_group.descriptor;
    const int generic = generic_group_order(spec.id);
    if (cg.order == generic) {
      const std::string name = generic_group_name(spec.id);
      if (!name.empty() && cg.name() != name) o.fail(where(spec) + " histogram is not " + name);
      continue;
    }
    const std::string msg = where(spec) + " order " + std::to_string(cg.order) + " (curve subgroup " +
                            std::to_string(ag.order) + ")";
    // K1, K2 and K3 share one configuration, hence one excess.
    const bool is_k13 = spec.p == 13 && generic == 24 && cg.order == 72 && ag.order == 24 && ag.name() == "S4";
    const bool is_v13 = spec.p == 13 && spec.id == CurveId::Vu && spec.u && (*spec.u + 13) % 13 == 12 &&
                        cg.order == 16 && ag.order == 8 && ag.name() == "D4";
    if (is_k13) {
      k13 = true;
      excesses.push_back(msg);
    } else if (is_v13) {
      v13 = true;
      excesses.push_back(msg);
    } else if (is_vu_exceptional(spec)) {
      exceptional.push_back(msg);
      o.pass = false;
    } else {
      o.fail(msg);
    }
  }
  if (!k13) o.fail("K at 13 lacks the index-3 excess");
  if (!v13) o.fail("V_-1 at 13 lacks the index-2 excess");
  o.notes.push_back("expected excesses: " + join(excesses));
  if (!exceptional.empty()) o.notes.push_back("additional excesses at 81u = 1: " + join(exceptional, 20));
  return o;
}

Outcome criterion3(const Json& scan, const Json& theorem13) {
  Outcome o;
  if (scan["coincidence_primes"] != Json({13})) o.fail("coincidence primes " + scan["coincidence_primes"].dump());
  for (const auto& e : scan["primes"]) {
    if (e.contains("error")) o.fail("p=" + e["characteristic"].dump() + " " + e["error"].get<std::string>());
  }
  const auto& classes = theorem13["coincidence_classes"];
  std::vector<Json> members;
  for (const auto& c : classes) {
    members.push_back(c["members"]);
    if (c["projectively_equivalent"] != true) o.fail("class " + c["members"].dump() + " lacks a witness");
    for (const auto& w : c["witnesses"]) {
      o.notes.push_back(w["from"].get<std::string>() + "->" + w["to"].get<std::string>() + " " + w["map"].dump());
    }
  }
  if (members != std::vector<Json>{Json({"K1", "K2", "K3"}), Json({"Vu(12)", "Ec313b"})}) {
    o.fail("classes at 13: " + Json(members).dump());
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  int tested = 0;
  for (std::uint32_t p = 7; p <= kMaxPrime; ++p) {
    if (!is_prime(p)) continue;
    const auto r = cmd_jcheck(p);
    ++tested;
    const auto j = r.json["j"].get<std::int64_t>();
    if (j != expected_j(p)) o.fail("p=" + std::to_string(p) + " j=" + std::to_string(j));
    if (p == 7 && j != 1728 % 7) o.fail("j at 7 is not 1728");
    if (p == 13 && j != 0) o.fail("j at 13 is not 0");
  }
  o.notes.push_back(std::to_string(tested) + " primes");
  return o;
}

Outcome criterion5(const std::vector<Analyzed>& all) {
  Outcome o;
  std::vector<std::string> exceptional;
  for (const auto& [spec, a] : all) {
    const auto& sig = a.signature;
    const Field fp = Field::prime(spec.p);
    const Embedding up = default_embedding(fp, a.scheme.field);
    auto on_conic = [&](int rank, const std::optional<HomPoly>& found, const HomPoly& want) {
      return rank == 5 && found && proportional(*found, want.mapped(up));
    };
    std::string bad;
    switch (spec.id) {
      case CurveId::F:
        if (sig.line_cover != 3) bad = "line cover " + std::to_string(sig.line_cover);
        break;
      case CurveId::K: case CurveId::K1:
        if (sig.line_cover <= 3) bad = "line cover " + std::to_string(sig.line_cover);
        break;
      case CurveId::V:
        if (sig.hyperflex_conic_rank != 6) bad = "hyperflex rank " + std::to_string(sig.hyperflex_conic_rank);
        break;
      case CurveId::Vu: {
        const std::int64_t u = *spec.u;
        const std::int64_t c = ((27 * u + 5) % static_cast<std::int64_t>(spec.p) + spec.p) % spec.p;
        const HomPoly simple = HomPoly::parse(fp, c == 0 ? "32*x*y" : std::to_string(c) + "*z^2 + 32*x*y");
        if (!on_conic(sig.hyperflex_conic_rank, sig.hyperflex_conic, HomPoly::parse(fp, "z^2 + x*y"))) {
          bad = "hyperflex rank " + std::to_string(sig.hyperflex_conic_rank);
        } else if (!on_conic(sig.simple_flex_conic_rank, sig.simple_flex_conic, simple)) {
          bad = "simple flex rank " + std::to_string(sig.simple_flex_conic_rank);
        }
        break;
      }
      default:
        break;
    }
    if (bad.empty()) continue;
    if (is_vu_exceptional(spec)) {
      exceptional.push_back(where(spec) + " " + bad);
      o.pass = false;
    } else {
      o.fail(where(spec) + " " + bad);
    }
  }
  if (!exceptional.empty()) o.notes.push_back("members with 81u = 1 off the conics: " + join(exceptional, 20));
  return o;
}

Mat3 random_invertible(const Field& f, std::mt19937_64& rng) {
  while (true) {
    Mat3 m;
    for (auto& c : m.m) c = f.from_index(rng() % static_cast<std::uint64_t>(f.size()));
    if (!m.det().is_zero()) return m;
  }
}

ProjMap random_map(const Field& f, std::mt19937_64& rng) { return ProjMap(random_invertible(f, rng)); }

std::set<ProjPoint> scheme_points(const InflectionScheme& s) {
  std::set<ProjPoint> out;
  for (const auto& r : s.flexes) out.insert(r.point);
  return out;
}

Outcome criterion6(const std::vector<Analyzed>& all) {
  Outcome o;
  // Fixed points and containment for every analyzed curve.
  int max_fixed = 0;
  for (const auto& [spec, a] : all) {
    const int fixed = max_fixed_flexes(a);
    max_fixed = std::max(max_fixed, fixed);
    if (fixed >= 6) o.fail("aut-id " + where(spec) + " fixes " + std::to_string(fixed));
    for (const auto& g : a.curve_group.elements) {
      if (!a.config_group.contains(g)) {
        o.fail("recon-orbit " + where(spec));
        break;
      }
    }
    for (const auto& item : check_profile(a)) {
      if (item.item == "recon_orbit" && item.status != Status::Pass) o.fail("recon-orbit maps " + where(spec));
    }
  }
  o.notes.push_back("aut-id and recon-orbit on " + std::to_string(all.size()) + " curves, max fixed " +
                    std::to_string(max_fixed));

  // Equivariance.
  std::mt19937_64 rng(19);
  int moved = 0;
  for (const CurveSpec spec : {CurveSpec{CurveId::F, 19, {}}, CurveSpec{CurveId::K, 19, {}},
                               CurveSpec{CurveId::Cplus, 19, {}}, CurveSpec{CurveId::Cminus, 19, {}},
                               CurveSpec{CurveId::V, 19, {}}, CurveSpec{CurveId::Vu, 19, 2},
                               CurveSpec{CurveId::Ec313b, 19, {}}}) {
    const auto b = build(spec);
    const auto s = inflection_scheme(b.curve);
    for (int trial = 0; trial < 100; ++trial) {
      const Mat3 m = random_invertible(b.field, rng);
      const auto t = inflection_scheme(PlaneQuartic(transform(b.curve.form(), m)));
      ++moved;
      if (t.field != s.field) {
        o.fail("equivariance field " + where(spec));
        continue;
      }
      const ProjMap ml(m.mapped(s.from_base));
      std::map<ProjPoint, int> expect, got;
      for (const auto& r : s.flexes) expect[ml.apply(r.point)] = r.weight;
      for (const auto& r : t.flexes) got[r.point] = r.weight;
      if (expect != got) o.fail("equivariance " + where(spec) + " trial " + std::to_string(trial));
    }
  }
  o.notes.push_back("equivariance on " + std::to_string(moved) + " moved curves");

  // Exhaustive enumeration.
  int oracle_runs = 0;
  for (const auto& [spec, a] : all) {
    if (a.scheme.field.size() > 30000) continue;
    const HomPoly f = a.built.curve.form().mapped(a.to_base.then(a.scheme.from_base));
    if (oracle::common_zeros(f, hessian(f)) != scheme_points(a.scheme)) o.fail("oracle " + where(spec));
    ++oracle_runs;
  }
  o.notes.push_back("enumeration oracle on " + std::to_string(oracle_runs) + " curves");

  // Transporters against all of PGL3.
  std::mt19937_64 crng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = Field::prime(trial < 14 ? 5 : 7);
    const std::size_t size = 4 + static_cast<std::size_t>(trial % 5);
    const auto ca = oracle::random_configuration(f, size, crng);
    const auto cb = trial % 2 == 0 ? ca.transformed(random_map(f, crng)) : oracle::random_configuration(f, size, crng);
    const auto fast = transporters(ca, cb);
    if (fast != oracle::pgl3_transporters(ca, cb)) o.fail("PGL3 trial " + std::to_string(trial));
    nonempty += fast.empty() ? 0 : 1;
  }
  o.notes.push_back("PGL3 enumeration on 20 configurations, " + std::to_string(nonempty) + " with transporters");
  return o;
}

Outcome criterion7(const Json& first, const Json& second) {
  Outcome o;
  const std::string a = first.dump(2);
  const std::string b = second.dump(2);
  if (a != b) o.fail("scan reports differ");
  o.notes.push_back(std::to_string(a.size()) + " bytes");
  return o;
}

}  // namespace

int main() {
  bool all_pass = true;
  auto run = [&](int n, const std::string& summary, const Outcome& o) {
    report(n, o, summary);
    all_pass = all_pass && o.pass;
  };
  try {
    const auto catalog = analyze_catalog();
    run(1, "flex census for 5 <= p <= 50", criterion1(catalog));
    run(2, "configuration group orders and histograms", criterion2(catalog));
    const Json scan1 = cmd_scan(kMaxPrime).json;
    run(3, "coincidences only at 13", criterion3(scan1, cmd_theorem(13).json));
    run(4, "j-invariant 35152/9", criterion4());
    run(5, "support signatures", criterion5(catalog));
    run(6, "property suites", criterion6(catalog));
    run(7, "scan determinism", criterion7(scan1, cmd_scan(kMaxPrime).json));
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
  return all_pass ? 0 : 1;
}
