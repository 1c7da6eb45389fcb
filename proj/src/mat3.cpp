#include "flexline/mat3.hpp"

#include "flexline/error.hpp"

namespace flexline {

Mat3 Mat3::zero(const Field& f) {
  Mat3 r;
  r.m.fill(f.zero());
  return r;
}

Mat3 Mat3::identity(const Field& f) {
  Mat3 r = zero(f);
  r(0, 0) = r(1, 1) = r(2, 2) = f.one();
  return r;
}

Mat3 Mat3::from_ints(const Field& f, const std::array<std::int64_t, 9>& v) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = f.from_int(v[i]);
  return r;
}

Mat3 Mat3::from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    r(i, 0) = a[static_cast<std::size_t>(i)];
    r(i, 1) = b[static_cast<std::size_t>(i)];
    r(i, 2) = c[static_cast<std::size_t>(i)];
  }
  return r;
}

Mat3 Mat3::diagonal(const Fe& a, const Fe& b, const Fe& c) {
  const Fe z = a - a;
  Mat3 r;
  r.m = {a, z, z, z, b, z, z, z, c};
  return r;
}

Fe Mat3::det() const {
  const Mat3& a = *this;
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 Mat3::adjugate() const {
  const Mat3& a = *this;
  Mat3 r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  }
  return r;
}

Mat3 Mat3::inverse() const {
  const Fe d = det();
  if (d.is_zero()) throw Error(Errc::SingularMatrix, "matrix is not invertible");
  return adjugate().scaled(d.inv());
}

Mat3 Mat3::scaled(const Fe& c) const {
  Mat3 r = *this;
  for (auto& x : r.m) x *= c;
  return r;
}

Mat3 Mat3::mapped(const Embedding& e) const {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = e(m[i]);
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  }
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2], a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Fe det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Fe dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Vec3 mapped(const Vec3& v, const Embedding& e) { return {e(v[0]), e(v[1]), e(v[2])}; }

}  // namespace flexline
