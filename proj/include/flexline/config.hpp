#pragma once

// Weighted configurations of inflection lines in the dual plane, their
// projective equivalences, automorphism groups and support signatures.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flexline/curve.hpp"

namespace flexline {

class LineConfiguration {
 public:
  LineConfiguration() = default;
  explicit LineConfiguration(Field field) : field_(std::move(field)) {}

  /// Weight of a line is the sum of the weights of the records tangent along it.
  static LineConfiguration from_flexes(const Field& field, const std::vector<FlexRecord>& records);

  const Field& field() const { return field_; }
  const std::map<ProjPoint, int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  void add(const ProjPoint& line, int weight);
  /// Zero for lines outside the support.
  int weight(const ProjPoint& line) const;
  int total_weight() const;
  std::map<int, int> weight_histogram() const;
  std::vector<ProjPoint> support(std::optional<int> weight = std::nullopt) const;

  LineConfiguration mapped(const Embedding& e) const;
  /// Image under the dual action of M.
  LineConfiguration transformed(const ProjMap& m) const;
  /// Whether M carries this configuration onto other, weights included.
  bool carried_onto(const ProjMap& m, const LineConfiguration& other) const;

  nlohmann::ordered_json to_json() const;
  /// Throws ParseError.
  static LineConfiguration from_json(const nlohmann::json& j);

  friend bool operator==(const LineConfiguration& a, const LineConfiguration& b) { return a.entries_ == b.entries_; }

 private:
  Field field_;
  std::map<ProjPoint, int> entries_;
};

struct GroupDescriptor {
  int order = 0;
  bool abelian = true;
  std::map<int, int> element_orders;  // element order -> count

  /// "S3", "S4", "D4" or "D8" when the invariants match, else empty.
  std::string name() const;
};

struct ProjGroup {
  Field field;
  std::vector<ProjMap> elements;  // sorted
  GroupDescriptor descriptor;

  bool contains(const ProjMap& m) const;
  /// Full multiplication table check: closure, identity and inverses.
  bool verify_closure() const;
};

/// Order of M in PGL3, up to the given bound; 0 if not reached.
int element_order(const ProjMap& m, int bound);
GroupDescriptor describe(const std::vector<ProjMap>& elements);
ProjGroup make_group(const Field& field, std::vector<ProjMap> elements);

/// Lexicographically least four points of a sorted list in general position.
std::optional<std::array<ProjPoint, 4>> least_frame(const std::vector<ProjPoint>& support);

struct TransporterOptions {
  /// Stop after this many maps; 0 means no limit.
  std::size_t limit = 0;
  std::size_t group_cap = 10000;
};

/// Every M with M A = B, weights included. A and B must share a field.
/// Throws DegenerateConfiguration, GroupTooLarge.
std::vector<ProjMap> transporters(const LineConfiguration& a, const LineConfiguration& b,
                                  const TransporterOptions& opts = {});

/// Throws DegenerateConfiguration, GroupTooLarge.
ProjGroup automorphism_group(const LineConfiguration& a);

/// Elements of G that preserve the curve; F is mapped into G's field.
ProjGroup curve_automorphisms(const HomPoly& f, const Embedding& into_group_field, const ProjGroup& g);

struct SupportSignature {
  int max_collinear = 0;
  std::map<int, int> collinear_profile;  // points on a line (>= 3) -> number of such lines
  int line_cover = 0;
  int hyperflex_conic_rank = 0;    // rank of the conic system through the weight-2 lines
  std::optional<HomPoly> hyperflex_conic;
  int simple_flex_conic_rank = 0;  // same for the weight-1 lines
  std::optional<HomPoly> simple_flex_conic;
};

/// Exact signature of a nonempty configuration.
SupportSignature support_signature(const LineConfiguration& a);

/// Cheap projective invariants; unequal keys rule out any transporter.
struct InvariantKey {
  std::map<int, int> weight_histogram;
  std::map<int, int> collinear_profile;
  int hyperflex_conic_rank = 0;
  int simple_flex_conic_rank = 0;
  friend bool operator==(const InvariantKey&, const InvariantKey&) = default;
};
InvariantKey invariant_key(const LineConfiguration& a);

}  // namespace flexline
