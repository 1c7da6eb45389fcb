#pragma once

// Finite fields F_p and F_{p^k}.
//
// A Field is a cheap handle on an immutable FieldCtx. Elements (Fe) are plain
// values that remember the context they were created from, so the usual
// arithmetic operators work on them. An element must not outlive every Field
// handle of its context; all containers in this library hold a Field next to
// their elements for that reason.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flexline {

using BigInt = boost::multiprecision::cpp_int;

/// Storage bound for extension degrees over F_p.
inline constexpr int kMaxExtensionDegree = 24;
/// Default cap for root extraction and splitting fields.
inline constexpr int kDefaultDegreeCap = 8;
/// Products of two residues must fit in 32 bits.
inline constexpr std::uint32_t kMaxCharacteristic = 65521;

struct FieldCtx {
  std::uint32_t p = 0;
  int k = 1;
  // Monic modulus, low degree first, size k + 1. Empty for prime fields.
  std::vector<std::uint32_t> modulus;
  // reduction[i] = t^(k + i) mod modulus, for 0 <= i < k - 1.
  std::vector<std::vector<std::uint32_t>> reduction;
  // frobenius[i] = t^(i * p) mod modulus.
  std::vector<std::vector<std::uint32_t>> frobenius;
};

class Fe {
 public:
  using Coeff = std::uint16_t;

  Fe() = default;

  const FieldCtx* ctx() const { return ctx_; }
  std::uint32_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
  bool is_one() const;

  Fe& operator+=(const Fe& o);
  Fe& operator-=(const Fe& o);
  Fe& operator*=(const Fe& o);
  Fe& operator/=(const Fe& o) { return *this *= o.inv(); }
  Fe operator-() const;

  friend Fe operator+(Fe a, const Fe& b) { return a += b; }
  friend Fe operator-(Fe a, const Fe& b) { return a -= b; }
  friend Fe operator*(Fe a, const Fe& b) { return a *= b; }
  friend Fe operator/(Fe a, const Fe& b) { return a /= b; }

  /// Multiplicative inverse; throws InvalidArgument on zero.
  Fe inv() const;
  Fe pow(std::uint64_t e) const;
  Fe pow(const BigInt& e) const;
  /// a -> a^(p^times).
  Fe frobenius(int times = 1) const;
  bool in_prime_subfield() const;

  /// Coefficient-wise equality; the contexts are assumed to agree.
  friend bool operator==(const Fe& a, const Fe& b) { return a.c_ == b.c_; }
  /// Order by the integer sum c_i p^i, i.e. highest coefficient first.
  friend std::strong_ordering operator<=>(const Fe& a, const Fe& b);

  std::size_t hash() const;

 private:
  friend class Field;
  const FieldCtx* ctx_ = nullptr;
  std::array<Coeff, kMaxExtensionDegree> c_{};
};

struct FeHash {
  std::size_t operator()(const Fe& a) const { return a.hash(); }
};

class Field {
 public:
  Field() = default;

  /// F_p; throws NotPrime, ExcludedCharacteristic (p in {2,3}) or
  /// InvalidArgument (p too large for the 16-bit residue storage).
  static Field prime(std::uint32_t p);
  /// F_p[t]/(modulus); modulus low-to-high, monic. Throws Reducible.
  static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// The canonical field of the given degree over F_p: its modulus is the
  /// first monic irreducible polynomial when coefficient vectors are read
  /// as base-p integers with the top coefficient most significant.
  static Field canonical(std::uint32_t p, int degree);
  /// "p" or "p^k/c0,c1,...,ck".
  static Field parse(std::string_view spec);

  bool valid() const { return ctx_ != nullptr; }
  std::uint32_t characteristic() const { return ctx_->p; }
  int degree() const { return ctx_->k; }
  const std::vector<std::uint32_t>& modulus() const { return ctx_->modulus; }
  const FieldCtx* ctx() const { return ctx_.get(); }
  BigInt size() const;
  std::string spec() const;

  Fe zero() const;
  Fe one() const;
  Fe from_int(std::int64_t v) const;
  /// The class of t; for prime fields this is 1.
  Fe generator() const;
  Fe from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// Bijection between [0, q) and the field, consistent with Fe ordering.
  Fe from_index(std::uint64_t index) const;
  std::uint64_t index_of(const Fe& a) const;

  std::string format(const Fe& a) const;
  /// Integer, or polynomial in t such as "3*t^2+t-1".
  Fe parse_element(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const FieldCtx> ctx) : ctx_(std::move(ctx)) {}
  std::shared_ptr<const FieldCtx> ctx_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool is_irreducible_mod_p(std::span<const std::uint32_t> poly, std::uint32_t p);

}  // namespace flexline
