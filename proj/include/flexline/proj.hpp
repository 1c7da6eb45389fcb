#pragma once

// Points and lines of the projective plane, PGL3, conics and cross-ratios.
// Lines are points of the dual plane and share the ProjPoint type.

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flexline/mat3.hpp"
#include "flexline/mpoly.hpp"

namespace flexline {

class ProjPoint {
 public:
  ProjPoint() = default;
  /// Scales so that the first nonzero coordinate is 1; throws InvalidArgument on 0.
  explicit ProjPoint(const Vec3& v);
  static ProjPoint from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c);

  const Vec3& coords() const { return v_; }
  const Fe& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  ProjPoint mapped(const Embedding& e) const { return ProjPoint(flexline::mapped(v_, e)); }

  /// "[a,b,c]", or "dual [a,b,c]" for lines.
  std::string format(const Field& f, bool dual = false) const;
  static ProjPoint parse(const Field& f, std::string_view text);

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

 private:
  Vec3 v_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const;
};

enum class Role { Point, Line };

class ProjMap {
 public:
  ProjMap() = default;
  /// Throws SingularMatrix; scales so the first nonzero entry is 1.
  explicit ProjMap(const Mat3& m);
  static ProjMap identity(const Field& f);

  const Mat3& matrix() const { return m_; }
  bool is_identity() const;

  /// Points by M v, lines by the inverse transpose.
  ProjPoint apply(const ProjPoint& p, Role role = Role::Point) const;
  Vec3 apply_raw(const Vec3& v, Role role = Role::Point) const;
  ProjMap inverse() const;
  ProjMap mapped(const Embedding& e) const { return ProjMap(m_.mapped(e)); }
  /// (a * b)(v) = a(b(v)).
  friend ProjMap operator*(const ProjMap& a, const ProjMap& b) { return ProjMap(a.m_ * b.m_); }

  std::string format(const Field& f) const;

  friend bool operator==(const ProjMap& a, const ProjMap& b) { return a.m_ == b.m_; }
  friend std::strong_ordering operator<=>(const ProjMap& a, const ProjMap& b);

 private:
  Mat3 m_;
};

/// No three of the four points are collinear.
bool general_position(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// The unique map sending src[i] to dst[i]; throws DegenerateFrame.
ProjMap map_from_frames(std::span<const ProjPoint, 4> src, std::span<const ProjPoint, 4> dst);

struct ConicFit {
  int rank = 0;
  std::optional<HomPoly> conic;
};

/// Rank of the evaluation matrix of the degree-2 monomials at the points and,
/// when it is below 6, the conic given by the first reduced kernel vector.
ConicFit conic_through(const Field& f, std::span<const ProjPoint> points);

/// Rank of the symmetric matrix of a quadratic form (p odd).
int conic_rank(const HomPoly& c);

struct ConicParametrization {
  std::array<UPoly, 3> coords;  // each of degree at most 2 in t
  Vec3 base, q1, q2;            // lines through base toward q1 + t q2; t = infinity gives q2
  Vec3 polar_base;              // twice the polar of base, as a linear form

  /// Parameter of a point of the conic; nullopt stands for infinity.
  std::optional<Fe> parameter_of(const Vec3& x) const;
  Vec3 at(const Fe& t) const;
};

/// Projection from a base point; throws ReducibleConic or BaseNotOnConic.
ConicParametrization parametrize_conic(const HomPoly& c, const ProjPoint& base);

/// Cross-ratio (t1-t3)(t2-t4) / ((t1-t4)(t2-t3)); nullopt is infinity.
Fe cross_ratio(const Field& f, std::span<const std::optional<Fe>, 4> t);
/// 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2).
Fe j_from_lambda(const Fe& lambda);
/// Throws DegeneratePoints if two parameters coincide.
Fe j_from_four_points(const Field& f, std::span<const std::optional<Fe>, 4> t);

/// Row reduction: rank and a basis of the right kernel, one vector per free
/// column in increasing order.
struct LinearSolve {
  int rank = 0;
  std::vector<std::vector<Fe>> kernel;
};
LinearSolve row_reduce(const Field& f, std::vector<std::vector<Fe>> rows, int cols);

}  // namespace flexline
