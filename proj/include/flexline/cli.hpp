#pragma once

// Report generation behind the flexline command line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flexline/catalog.hpp"
#include "flexline/config.hpp"

namespace flexline {

using Json = nlohmann::ordered_json;

struct RunOptions {
  EliminationOptions elimination;
  /// Analyze over this field instead of the smallest one holding the curve.
  std::optional<Field> field;
  /// Restricts the Vu sample of theorem and scan.
  std::vector<std::int64_t> u_values;
  /// Wall-clock timings make reports nondeterministic, so they are opt-in.
  bool timing = false;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

enum class Status { Pass, Fail, Finding };
std::string_view status_name(Status s);

struct CheckItem {
  std::string item;
  Status status = Status::Pass;
  std::string expected;
  std::string actual;
  std::string note;
};

struct CurveAnalysis {
  BuiltCurve built;
  Field base;  // field the curve was analyzed over
  Embedding to_base;
  bool smooth = false;
  InflectionScheme scheme;
  LineConfiguration config;
  ProjGroup config_group;
  ProjGroup curve_group;
  SupportSignature signature;
};

/// Runs the full pipeline on one catalog curve. Throws the module errors.
CurveAnalysis analyze_curve(const CurveSpec& spec, const RunOptions& opts = {});

/// Comparison with the expected profile. Mismatches against values stated
/// for this characteristic fail; mismatches against carried-over values
/// are findings.
std::vector<CheckItem> check_profile(const CurveAnalysis& a);

/// The named maps embedded in a field holding both the map and the scheme,
/// together with the scheme data moved there.
struct NamedMapCheck {
  std::string name;
  bool curve_automorphism = false;
  bool config_automorphism = false;
  bool expect_curve = false;
  bool expect_config = false;
};
std::vector<NamedMapCheck> check_named_maps(const CurveAnalysis& a);

/// Largest number of flex points fixed by a non-identity element of the
/// configuration group.
int max_fixed_flexes(const CurveAnalysis& a);

struct Report {
  Json json;
  int exit_code = 0;
};

Report cmd_analyze(const CurveSpec& spec, const RunOptions& opts = {});
Report cmd_theorem(std::uint32_t p, const RunOptions& opts = {});
Report cmd_scan(std::uint32_t p_max, const RunOptions& opts = {});
Report cmd_jcheck(std::uint32_t p, const RunOptions& opts = {});

/// Structured report for a failure escaping a command; exit code 2.
Report error_report(const std::string& command, const std::exception& e);

/// Indented plain-text rendering of a report.
std::string render_text(const Json& j);

/// 35152 / 9 in F_p.
std::int64_t expected_j(std::uint32_t p);

}  // namespace flexline
