#include "doctest.h"
#include "flexline/cli.hpp"
#include "flexline/error.hpp"

using namespace flexline;

namespace {

const Json* find_check(const Json& report, const std::string& item) {
  for (const auto& c : report["checks"]) {
    if (c["item"] == item) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("analyze the Fermat quartic") {
  const auto r = cmd_analyze({CurveId::F, 17, {}});
  CHECK(r.exit_code == 0);
  CHECK(r.json["status"] == "PASS");
  CHECK(r.json["scheme"]["hyperflexes"] == 12);
  CHECK(r.json["config_group"]["order"] == 96);
  CHECK(r.json["signature"]["line_cover"] == 3);
  CHECK(r.json["configuration"]["points"].size() == 12);
  CHECK(!r.json.contains("timing_seconds"));
}

TEST_CASE("analyze K in characteristic 13 reports the index-3 excess") {
  const auto r = cmd_analyze({CurveId::K, 13, {}});
  CHECK(r.json["status"] == "PASS");
  CHECK(r.json["config_group"]["order"] == 72);
  CHECK(r.json["curve_group"]["order"] == 24);
  const Json* excess = find_check(r.json, "config_group_excess");
  REQUIRE(excess);
  CHECK((*excess)["status"] == "FINDING");
  CHECK((*excess)["actual"] == "index 3");
}

TEST_CASE("structured errors") {
  try {
    cmd_analyze({CurveId::Vu, 11, 1});
    FAIL("expected an error");
  } catch (const std::exception& e) {
    const auto r = error_report("analyze", e);
    CHECK(r.exit_code == 2);
    CHECK(r.json["status"] == "ERROR");
    CHECK(r.json["error"]["code"] == "SingularParameter");
  }
  CHECK_THROWS_AS(cmd_jcheck(5), Error);
}

TEST_CASE("analysis over an explicit larger field") {
  RunOptions opts;
  opts.field = Field::canonical(13, 2);
  const auto r = cmd_analyze({CurveId::V, 13, {}}, opts);
  CHECK(r.json["base_field"] == opts.field->spec());
  CHECK(r.json["scheme"]["hyperflexes"] == 8);
  CHECK(r.json["config_group"]["order"] == 8);
}

TEST_CASE("theorem reproduction") {
  const auto r11 = cmd_theorem(11);
  CHECK(r11.exit_code == 0);
  CHECK(r11.json["coincidence_classes"].empty());

  const auto r7 = cmd_theorem(7);
  CHECK(r7.exit_code == 0);
  for (const auto& c : r7.json["curves"]) {
    CHECK(c["id"] != "Cplus");
    CHECK(c["id"] != "V");
  }

  RunOptions only_minus_one;
  only_minus_one.u_values = {-1};
  const auto r13 = cmd_theorem(13, only_minus_one);
  CHECK(r13.exit_code == 0);
  const auto& classes = r13.json["coincidence_classes"];
  REQUIRE(classes.size() == 2);
  CHECK(classes[0]["members"] == Json({"K1", "K2", "K3"}));
  CHECK(classes[1]["members"] == Json({"Vu(12)", "Ec313b"}));
  for (const auto& c : classes) CHECK(c["projectively_equivalent"] == true);

  // The matrix is symmetric with a true diagonal.
  const auto& m = r13.json["equal_configuration_matrix"];
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m[i][i] == 1);
    for (std::size_t j = 0; j < m.size(); ++j) CHECK(m[i][j] == m[j][i]);
  }
  CHECK(cmd_theorem(13, only_minus_one).json.dump() == r13.json.dump());
}

TEST_CASE("scan") {
  const auto small = cmd_scan(11);
  CHECK(small.exit_code == 0);
  CHECK(small.json["coincidence_primes"].empty());
  CHECK(small.json["primes"].size() == 3);
  const auto none = cmd_scan(4);
  CHECK(none.json["primes"].empty());
  CHECK(none.json["status"] == "PASS");
}

TEST_CASE("j-invariant") {
  const auto r7 = cmd_jcheck(7);
  CHECK(r7.json["j"] == 6);
  CHECK(r7.json["j_is_1728"] == true);
  CHECK(r7.json["g2_order"] == 2);
  const auto r13 = cmd_jcheck(13);
  CHECK(r13.json["j"] == 0);
  CHECK(r13.json["g2_order"] == 3);
  const auto r11 = cmd_jcheck(11);
  CHECK(r11.json["status"] == "PASS");
  CHECK(r11.json["j"] == expected_j(11));
  CHECK(r11.json["g2_order"] == 1);
  CHECK(expected_j(11) == 2);  // 35152 = 9 * 2 mod 11
}

TEST_CASE("text rendering") {
  const auto text = render_text(cmd_jcheck(13).json);
  CHECK(text.find("status: PASS") != std::string::npos);
  CHECK(text.find("command: jcheck") != std::string::npos);
}
