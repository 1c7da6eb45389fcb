#pragma once

// Univariate polynomials over a Field: Euclidean arithmetic, factorization
// into irreducibles (distinct-degree then equal-degree splitting), roots with
// multiplicity and splitting fields.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flexline/embedding.hpp"
#include "flexline/gf.hpp"

namespace flexline {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Field field) : field_(std::move(field)) {}
  UPoly(Field field, std::vector<Fe> coeffs);

  /// c * t^degree.
  static UPoly monomial(const Field& field, const Fe& c, int degree);
  /// t - a.
  static UPoly linear(const Field& field, const Fe& a);
  /// Coefficients given as integers, low degree first.
  static UPoly from_ints(const Field& field, const std::vector<std::int64_t>& coeffs);

  const Field& field() const { return field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Fe>& coeffs() const { return coeffs_; }
  Fe coeff(int i) const;
  Fe leading() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  UPoly operator-() const;
  UPoly scaled(const Fe& c) const;

  Fe eval(const Fe& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  /// Image of every coefficient under a field embedding.
  UPoly mapped(const Embedding& e) const;

  std::string format(char var = 't') const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  Field field_;
  std::vector<Fe> coeffs_;
};

struct DivMod {
  UPoly quotient;
  UPoly remainder;
};

DivMod divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
/// Exact quotient; throws InvalidArgument when b does not divide a.
UPoly exact_div(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) is the zero polynomial.
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly powmod(const UPoly& base, const BigInt& e, const UPoly& modulus);

bool is_irreducible(const UPoly& f);

/// Largest m with g^m | f (g nonconstant, f nonzero), by repeated division.
int multiplicity(const UPoly& f, const UPoly& g);

struct DegreeFactor {
  int degree;
  UPoly product;  // squarefree product of the distinct irreducible factors of this degree
};

/// Distinct-degree factorization of the radical of f; f may carry repeated
/// factors and p may be smaller than deg f.
std::vector<DegreeFactor> distinct_degree_factors(const UPoly& f);

/// Splits a squarefree product of irreducible factors of common degree d.
/// The splitting sequence is pseudo-random but fully determined by the input.
std::vector<UPoly> equal_degree_split(const UPoly& f, int d);

struct Factor {
  UPoly poly;  // monic irreducible
  int multiplicity;
};

/// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
std::vector<Factor> factor(const UPoly& f);

struct RootMult {
  Fe root;
  int multiplicity;
};

/// Roots lying in f's own field, ascending, with exact multiplicities.
std::vector<RootMult> roots_with_multiplicity(const UPoly& f);

struct Splitting {
  Field field;
  Embedding from_base;
  std::vector<RootMult> roots;
};

/// Splitting field of f over its field (flattened to a canonical field over
/// F_p) and the complete root list there. Throws DegreeOverflow when the
/// total degree over F_p would exceed degree_cap.
Splitting splitting_roots(const UPoly& f, int degree_cap = kDefaultDegreeCap);

}  // namespace flexline
