#pragma once

// Homogeneous polynomials in x, y, z.
//
// Coefficients are stored densely over the monomials of the fixed degree,
// ordered x^d, x^(d-1) y, x^(d-1) z, x^(d-2) y^2, ... (lexicographic on the
// exponent triple, largest first).

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flexline/mat3.hpp"
#include "flexline/upoly.hpp"

namespace flexline {

using Exponent = std::array<int, 3>;

class HomPoly {
 public:
  HomPoly() = default;
  /// The zero form of the given degree.
  HomPoly(Field field, int degree);

  static HomPoly monomial(const Field& field, const Fe& c, int a, int b, int cz);
  static HomPoly variable(const Field& field, int index);
  /// Parses "c*x^a*y^b*z^c + ..."; coefficients may be integers, or
  /// parenthesised elements such as "(3*t+1)". Throws ParseError.
  static HomPoly parse(const Field& field, std::string_view text);

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  bool is_zero() const;

  Fe coeff(int a, int b, int c) const;
  void set(int a, int b, int c, const Fe& value);
  void add(int a, int b, int c, const Fe& value);
  /// Nonzero terms in storage order.
  std::vector<std::pair<Exponent, Fe>> terms() const;

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  HomPoly scaled(const Fe& c) const;

  Fe eval(const Fe& x, const Fe& y, const Fe& z) const;
  Fe eval(const Vec3& v) const { return eval(v[0], v[1], v[2]); }
  /// Partial derivative in variable 0, 1 or 2.
  HomPoly partial(int var) const;
  Vec3 gradient_at(const Vec3& v) const;
  /// F(c0(t), c1(t), c2(t)) for univariate coordinates.
  UPoly restrict(const std::array<UPoly, 3>& coords) const;
  /// F(P + t Q).
  UPoly along(const Vec3& p, const Vec3& q) const;
  HomPoly mapped(const Embedding& e) const;

  /// Divides by the first nonzero coefficient in storage order.
  HomPoly normalized() const;
  std::string format() const;

  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::size_t index(int a, int b) const;
  Field field_;
  int degree_ = 0;
  std::vector<Fe> coeffs_;
};

/// Nonzero and equal up to a nonzero scalar.
bool proportional(const HomPoly& a, const HomPoly& b);

/// Determinant of the matrix of second partials.
HomPoly hessian(const HomPoly& f);

/// A binary form R(x, y) of the given degree, stored as R(x, 1).
struct BinaryForm {
  int degree = 0;
  UPoly at_y1;

  bool is_zero() const { return at_y1.is_zero(); }
  /// Multiplicity of the root (1 : 0), i.e. the power of y dividing R.
  int multiplicity_at_infinity() const { return degree - at_y1.degree(); }
};

enum class ResultantMode {
  Lenient,          // use the actual z-degrees of both forms
  RequireMonicInZ,  // z^deg must occur in both, else LeadingCoefficientVanishes
};

/// Sylvester resultant with respect to z. The result is homogeneous of degree
/// deg F * n + deg G * m - m * n where m, n are the z-degrees.
BinaryForm resultant_z(const HomPoly& f, const HomPoly& g, ResultantMode mode = ResultantMode::Lenient);

/// F(M v): precomposition with the linear map.
HomPoly substitute(const HomPoly& f, const Mat3& m);
/// F(M^-1 v), whose zero set is the image of the zero set of F under M.
HomPoly transform(const HomPoly& f, const Mat3& m);

}  // namespace flexline
