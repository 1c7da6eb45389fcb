#pragma once

// Plane quartics: smoothness, tangents, contact orders and the inflection
// scheme V(F, Hess F) with its weights.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flexline/mpoly.hpp"
#include "flexline/proj.hpp"

namespace flexline {

class PlaneQuartic {
 public:
  PlaneQuartic() = default;
  /// Throws InvalidArgument unless F is a nonzero quartic.
  explicit PlaneQuartic(HomPoly f, std::string label = {});

  const HomPoly& form() const { return f_; }
  const Field& field() const { return f_.field(); }
  const std::string& label() const { return label_; }

 private:
  HomPoly f_;
  std::string label_;
};

struct EliminationOptions {
  /// Mixed into the coefficient hash that seeds the coordinate changes.
  std::uint64_t seed_override = 0;
  int max_attempts = 8;
  /// Bound on the degree over F_p of the field holding all solutions.
  int degree_cap = kMaxExtensionDegree;
};

/// Deterministic seed for the coordinate changes applied to a form.
std::uint64_t form_seed(const HomPoly& f, std::uint64_t seed_override);

/// A point of V(F, G) grouped with the other solutions on its projection fiber.
struct Fiber {
  std::vector<ProjPoint> points;
  int resultant_multiplicity = 0;
};

struct Intersection {
  Field field;
  Embedding from_base;
  std::vector<Fiber> fibers;
  Mat3 coordinate_change;  // solutions were found in coordinates v' with v = M v'
  int attempts = 0;
};

/// All points of V(F, G) over the smallest canonical field that contains
/// them. Throws EliminationDegenerate when every coordinate change fails
/// (for instance when F and G share a component).
Intersection intersect(const HomPoly& f, const HomPoly& g, const EliminationOptions& opts = {});

bool is_smooth(const PlaneQuartic& c, const EliminationOptions& opts = {});

/// Dual coordinates of the tangent at P; F must live over P's field.
/// Throws SingularPoint.
ProjPoint tangent_line(const HomPoly& f, const ProjPoint& p);

/// Order of vanishing at P of F restricted to the line L. Throws LineIsComponent.
int contact_order(const HomPoly& f, const ProjPoint& line, const ProjPoint& p);

struct FlexRecord {
  ProjPoint point;
  ProjPoint line;
  int weight = 0;
  int contact = 0;
};

struct InflectionScheme {
  Field field;
  Embedding from_base;
  std::vector<FlexRecord> flexes;  // sorted by point
  /// Set when a fiber's weights do not add up to the resultant multiplicity.
  bool wild = false;
  std::vector<std::string> anomalies;
  int attempts = 0;

  int total_weight() const;
  int count_weight(int w) const;
};

/// Throws HessianVanishes, EliminationDegenerate.
InflectionScheme inflection_scheme(const PlaneQuartic& c, const EliminationOptions& opts = {});

}  // namespace flexline
