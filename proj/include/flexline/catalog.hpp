#pragma once

// The quartics with many hyperflexes studied here, the maps between them
// and the results expected for each.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flexline/curve.hpp"

namespace flexline {

enum class CurveId { F, K, K1, K2, K3, Cplus, Cminus, V, Vu, Ec313a, Ec313b };

std::string_view curve_id_name(CurveId id);
/// Throws InvalidArgument for unknown names.
CurveId parse_curve_id(std::string_view name);

struct CurveSpec {
  CurveId id = CurveId::F;
  std::uint32_t p = 0;
  std::optional<std::int64_t> u;  // Vu only; any integer representative

  /// "F", "Vu(12)" and so on.
  std::string label() const;
};

/// Throws InadmissibleCharacteristic or SingularParameter.
void check_admissible(const CurveSpec& spec);

struct BuiltCurve {
  CurveSpec spec;
  PlaneQuartic curve;
  Field field;                  // smallest field holding the coefficients
  std::optional<Fe> sqrt7;      // the fixed square root of 7, for C+ and C-
};

BuiltCurve build(const CurveSpec& spec);

struct NamedMap {
  std::string name;
  Field field;
  Embedding from_curve_field;  // the built curve's field into this one
  ProjMap map;
  bool expect_curve_automorphism = false;
  bool expect_config_automorphism = false;
  std::string note;
};

std::vector<NamedMap> named_maps(const CurveSpec& spec);

/// Where an expected value comes from: stated for this characteristic, or
/// carried over from the characteristic-0 statement.
enum class Provenance { Stated, CarriedOver };
std::string_view provenance_name(Provenance p);

struct ExpectedProfile {
  int hyperflexes = 0;
  int simple_flexes = 0;
  int config_group_order = 0;
  int curve_group_order = 0;
  /// Element-order histogram of the curve group when it is a named group.
  std::map<int, int> curve_group_histogram;
  std::map<int, int> config_group_histogram;  // empty when not named
  std::optional<int> line_cover;               // exact minimal line cover, F only
  bool line_cover_above_three = false;         // K
  std::optional<HomPoly> hyperflex_conic;      // conic holding the weight-2 lines
  bool hyperflex_no_conic = false;             // V
  std::optional<HomPoly> simple_flex_conic;    // conic holding the weight-1 lines
  Provenance provenance = Provenance::CarriedOver;
};

ExpectedProfile expected_profile(const CurveSpec& spec);

/// Whether 81u = 1 in F_p for a member of the Vu family. These members have
/// twelve hyperflexes instead of eight.
bool is_vu_exceptional(const CurveSpec& spec);

/// Values of u used for the Vu family at p: all of F_p minus {0, 1} up to
/// p = 37, then u = 2..37 followed by -1.
std::vector<std::int64_t> vu_parameters(std::uint32_t p);

/// Catalog members compared by the theorem at p; inadmissible ones are skipped.
std::vector<CurveSpec> theorem_curves(std::uint32_t p);

}  // namespace flexline
