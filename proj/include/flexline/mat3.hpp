#pragma once

// 3x3 matrices and 3-vectors over a field.

#include <array>
#include <string>

#include "flexline/embedding.hpp"
#include "flexline/gf.hpp"

namespace flexline {

using Vec3 = std::array<Fe, 3>;

struct Mat3 {
  std::array<Fe, 9> m;  // row-major

  static Mat3 identity(const Field& f);
  static Mat3 zero(const Field& f);
  static Mat3 from_ints(const Field& f, const std::array<std::int64_t, 9>& v);
  static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c);
  static Mat3 diagonal(const Fe& a, const Fe& b, const Fe& c);

  Fe& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
  const Fe& operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

  Fe det() const;
  /// Classical adjugate, so that M * adj(M) = det(M) * I.
  Mat3 adjugate() const;
  Mat3 transpose() const;
  /// Throws SingularMatrix.
  Mat3 inverse() const;
  Mat3 scaled(const Fe& c) const;
  Mat3 mapped(const Embedding& e) const;

  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Vec3 operator*(const Mat3& a, const Vec3& v);
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
};

Fe det3(const Vec3& a, const Vec3& b, const Vec3& c);
Vec3 cross(const Vec3& a, const Vec3& b);
Fe dot(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& v);
Vec3 mapped(const Vec3& v, const Embedding& e);

}  // namespace flexline
