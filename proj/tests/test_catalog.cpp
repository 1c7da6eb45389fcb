#include "doctest.h"
#include "flexline/catalog.hpp"
#include "flexline/cli.hpp"
#include "flexline/error.hpp"

using namespace flexline;

namespace {

Errc error_code(const CurveSpec& spec) {
  try {
    build(spec);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("construction and admissibility") {
  const auto k7 = build({CurveId::K, 7, {}});
  CHECK(k7.field.degree() == 1);
  CHECK(is_smooth(k7.curve));
  const auto c19 = build({CurveId::Cplus, 19, {}});
  REQUIRE(c19.sqrt7);
  CHECK(*c19.sqrt7 == c19.field.from_int(8));
  CHECK(is_smooth(c19.curve));
  // 7 is not a square mod 13, so C+ needs F_169.
  CHECK(build({CurveId::Cminus, 13, {}}).field.degree() == 2);

  CHECK(error_code({CurveId::Vu, 11, 0}) == Errc::SingularParameter);
  CHECK(error_code({CurveId::Vu, 11, 12}) == Errc::SingularParameter);
  CHECK(error_code({CurveId::K, 5, {}}) == Errc::InadmissibleCharacteristic);
  CHECK(error_code({CurveId::Cplus, 7, {}}) == Errc::InadmissibleCharacteristic);
  CHECK(error_code({CurveId::V, 7, {}}) == Errc::InadmissibleCharacteristic);
  CHECK(error_code({CurveId::F, 3, {}}) == Errc::ExcludedCharacteristic);
  CHECK(error_code({CurveId::F, 9, {}}) == Errc::NotPrime);
  CHECK(error_code({CurveId::K2, 11, {}}) == Errc::InadmissibleCharacteristic);
  CHECK_THROWS_AS(parse_curve_id("W"), Error);
  CHECK(parse_curve_id("Cminus") == CurveId::Cminus);
  CHECK(CurveSpec{CurveId::Vu, 13, -1}.label() == "Vu(12)");
}

TEST_CASE("every admissible catalog curve is smooth up to 50") {
  for (std::uint32_t p = 5; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& spec : theorem_curves(p)) {
      CAPTURE(spec.label());
      CAPTURE(p);
      CHECK(is_smooth(build(spec).curve));
    }
  }
}

TEST_CASE("parameter samples and theorem lists") {
  CHECK(vu_parameters(13).size() == 11);
  const auto big = vu_parameters(41);
  CHECK(big.size() == 37);
  CHECK(big.back() == 40);
  std::vector<std::string> labels;
  for (const auto& s : theorem_curves(13)) labels.push_back(s.label());
  CHECK(labels.front() == "F");
  CHECK(std::count(labels.begin(), labels.end(), "K1") == 1);
  CHECK(std::count(labels.begin(), labels.end(), "Ec313b") == 1);
  CHECK(std::count(labels.begin(), labels.end(), "K") == 0);
  for (const auto& s : theorem_curves(7)) {
    CHECK(s.id != CurveId::Cplus);
    CHECK(s.id != CurveId::V);
  }
}

TEST_CASE("expected profiles") {
  const auto v = expected_profile({CurveId::V, 11, {}});
  CHECK(v.hyperflexes == 8);
  CHECK(v.simple_flexes == 8);
  CHECK(v.config_group_order == 8);
  CHECK(v.hyperflex_no_conic);
  CHECK(v.provenance == Provenance::CarriedOver);
  const auto vm = expected_profile({CurveId::Vu, 13, 12});
  CHECK(vm.config_group_order == 16);
  CHECK(vm.provenance == Provenance::Stated);
  CHECK(expected_profile({CurveId::F, 5, {}}).hyperflexes == 12);
  CHECK(expected_profile({CurveId::K, 13, {}}).config_group_order == 72);
  CHECK_THROWS_AS(expected_profile({CurveId::K, 5, {}}), Error);
}

TEST_CASE("the characteristic-13 condition on u = -1") {
  // 1215 + 190 - 1 = 1404 = 2^2 3^3 13.
  CHECK(1215 + 190 - 1 == 1404);
  CHECK(1404 == 4 * 27 * 13);
  const Field f = Field::prime(13);
  const Fe u = f.from_int(-1);
  CHECK((f.from_int(1215) * u * u - f.from_int(190) * u - f.one()).is_zero());
  const Field g = Field::prime(17);
  const Fe w = g.from_int(-1);
  CHECK(!(g.from_int(1215) * w * w - g.from_int(190) * w - g.one()).is_zero());
}

TEST_CASE("named map flags hold") {
  for (const CurveSpec spec : {CurveSpec{CurveId::F, 13, {}}, CurveSpec{CurveId::K, 7, {}},
                               CurveSpec{CurveId::K, 13, {}}, CurveSpec{CurveId::Cplus, 13, {}},
                               CurveSpec{CurveId::Cminus, 19, {}}, CurveSpec{CurveId::V, 17, {}},
                               CurveSpec{CurveId::Vu, 13, 12}, CurveSpec{CurveId::Vu, 17, 3},
                               CurveSpec{CurveId::Ec313b, 13, {}}}) {
    CAPTURE(spec.label());
    CAPTURE(spec.p);
    const auto a = analyze_curve(spec);
    const auto checks = check_named_maps(a);
    CHECK(!checks.empty());
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CHECK(c.curve_automorphism == c.expect_curve);
      CHECK(c.config_automorphism == c.expect_config);
    }
  }
}

TEST_CASE("rho_i and sigma_s generate a group of order 8") {
  const auto maps = named_maps({CurveId::Vu, 17, 2});
  REQUIRE(maps.size() == 2);
  REQUIRE(maps[0].field == maps[1].field);
  std::vector<ProjMap> elems{ProjMap::identity(maps[0].field)};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : maps) {
      const ProjMap next = g.map * elems[k];
      if (std::find(elems.begin(), elems.end(), next) == elems.end()) elems.push_back(next);
    }
  }
  CHECK(elems.size() == 8);
  CHECK(describe(elems).name() == "D4");
}

TEST_CASE("the member 81u = 1 of the Vu family is the Klein quartic") {
  for (std::uint32_t p : {7U, 11U, 13U, 17U}) {
    CAPTURE(p);
    const Field fp = Field::prime(p);
    const std::int64_t u = fp.from_int(81).inv().coeff(0);
    const CurveSpec vs{CurveId::Vu, p, u};
    CHECK(is_vu_exceptional(vs));
    CHECK(!is_vu_exceptional({CurveId::Vu, p, 2 + (u == 2 ? 1 : 0)}));
    const auto v = analyze_curve(vs);
    CHECK(v.scheme.count_weight(2) == 12);
    CHECK(v.scheme.count_weight(1) == 0);
    CHECK(v.curve_group.descriptor.name() == "S4");

    // A projective map taking K onto this curve, found among the maps
    // between the two configurations.
    const auto k = analyze_curve({CurveId::K, p, {}});
    const Field common = compositum(k.scheme.field, v.scheme.field);
    const auto ck = k.config.mapped(default_embedding(k.scheme.field, common));
    const auto cv = v.config.mapped(default_embedding(v.scheme.field, common));
    const auto fk = k.built.curve.form().mapped(default_embedding(fp, common));
    const auto fv = v.built.curve.form().mapped(default_embedding(fp, common));
    bool found = false;
    for (const auto& m : transporters(ck, cv)) {
      if (proportional(transform(fk, m.matrix()), fv)) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}
