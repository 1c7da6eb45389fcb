#include "flexline/gf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "flexline/error.hpp"

namespace flexline {

namespace {

// Dense polynomials over F_p, low degree first, used for building contexts.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw Error(Errc::InvalidArgument, "inverse of zero");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder and quotient of a by b (b nonzero).
std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  Poly q;
  const int db = deg(b);
  if (deg(a) < db) return {q, a};
  q.assign(static_cast<std::size_t>(deg(a) - db + 1), 0);
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  for (int i = deg(a); i >= db; --i) {
    const std::uint64_t c = a[static_cast<std::size_t>(i)] * lead_inv % p;
    q[static_cast<std::size_t>(i - db)] = static_cast<std::uint32_t>(c);
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - db + j)];
      slot = static_cast<std::uint32_t>((slot + (p - c) * b[static_cast<std::size_t>(j)]) % p);
    }
  }
  trim(a);
  return {q, a};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return divmod(std::move(prod), f, p).second;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = divmod(std::move(base), f, p).second;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1U;
  }
  return result;
}

Poly sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::shared_ptr<const FieldCtx> make_ctx(std::uint32_t p, Poly modulus) {
  auto ctx = std::make_shared<FieldCtx>();
  ctx->p = p;
  if (modulus.empty()) {
    ctx->k = 1;
    return ctx;
  }
  const int k = deg(modulus);
  ctx->k = k;
  ctx->modulus = modulus;
  for (int i = 0; i + 1 < k; ++i) {
    Poly mono(static_cast<std::size_t>(k + i + 1), 0);
    mono.back() = 1;
    Poly r = divmod(std::move(mono), modulus, p).second;
    r.resize(static_cast<std::size_t>(k), 0);
    ctx->reduction.push_back(std::move(r));
  }
  const Poly t{0, 1};
  const Poly tp = powmod(t, p, modulus, p);
  Poly acc{1};
  for (int i = 0; i < k; ++i) {
    Poly row = acc;
    row.resize(static_cast<std::size_t>(k), 0);
    ctx->frobenius.push_back(std::move(row));
    acc = mulmod(acc, tp, modulus, p);
  }
  return ctx;
}

void check_characteristic(std::uint32_t p) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2 || p == 3) {
    throw Error(Errc::ExcludedCharacteristic, "characteristic " + std::to_string(p) + " is excluded");
  }
  if (p > kMaxCharacteristic) {
    throw Error(Errc::InvalidArgument, "characteristic " + std::to_string(p) + " exceeds " +
                                           std::to_string(kMaxCharacteristic));
  }
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(Errc::ParseError, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible_mod_p(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  for (auto& c : f) c %= p;
  trim(f);
  const int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  // Rabin: t^(p^n) = t mod f and gcd(t^(p^(n/r)) - t, f) = 1 for primes r | n.
  const Poly t{0, 1};
  std::vector<Poly> frob_powers{t};
  for (int i = 1; i <= n; ++i) frob_powers.push_back(powmod(frob_powers.back(), p, f, p));
  if (sub(frob_powers[static_cast<std::size_t>(n)], t, p).size() != 0) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    const Poly g = gcd(sub(frob_powers[static_cast<std::size_t>(n / static_cast<int>(r))], t, p), f, p);
    if (deg(g) > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fe

bool Fe::is_zero() const {
  for (int i = 0; i < ctx_->k; ++i) {
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

bool Fe::is_one() const {
  if (c_[0] != 1) return false;
  for (int i = 1; i < ctx_->k; ++i) {
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

bool Fe::in_prime_subfield() const {
  for (int i = 1; i < ctx_->k; ++i) {
    if (c_[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

Fe& Fe::operator+=(const Fe& o) {
  const std::uint32_t p = ctx_->p;
  for (int i = 0; i < ctx_->k; ++i) {
    std::uint32_t s = std::uint32_t{c_[static_cast<std::size_t>(i)]} + o.c_[static_cast<std::size_t>(i)];
    if (s >= p) s -= p;
    c_[static_cast<std::size_t>(i)] = static_cast<Coeff>(s);
  }
  return *this;
}

Fe& Fe::operator-=(const Fe& o) {
  const std::uint32_t p = ctx_->p;
  for (int i = 0; i < ctx_->k; ++i) {
    std::uint32_t s = std::uint32_t{c_[static_cast<std::size_t>(i)]} + p - o.c_[static_cast<std::size_t>(i)];
    if (s >= p) s -= p;
    c_[static_cast<std::size_t>(i)] = static_cast<Coeff>(s);
  }
  return *this;
}

Fe Fe::operator-() const {
  Fe r = *this;
  const std::uint32_t p = ctx_->p;
  for (int i = 0; i < ctx_->k; ++i) {
    auto& c = r.c_[static_cast<std::size_t>(i)];
    if (c != 0) c = static_cast<Coeff>(p - c);
  }
  return r;
}

Fe& Fe::operator*=(const Fe& o) {
  const FieldCtx& f = *ctx_;
  const std::uint64_t p = f.p;
  const int k = f.k;
  if (k == 1) {
    c_[0] = static_cast<Coeff>(std::uint64_t{c_[0]} * o.c_[0] % p);
    return *this;
  }
  std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> acc{};
  for (int i = 0; i < k; ++i) {
    const std::uint64_t a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (int j = 0; j < k; ++j) acc[static_cast<std::size_t>(i + j)] += a * o.c_[static_cast<std::size_t>(j)];
  }
  for (int i = k; i <= 2 * k - 2; ++i) {
    const std::uint64_t h = acc[static_cast<std::size_t>(i)] % p;
    if (h == 0) continue;
    const auto& red = f.reduction[static_cast<std::size_t>(i - k)];
    for (int j = 0; j < k; ++j) acc[static_cast<std::size_t>(j)] += h * red[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < k; ++j) c_[static_cast<std::size_t>(j)] = static_cast<Coeff>(acc[static_cast<std::size_t>(j)] % p);
  return *this;
}

Fe Fe::inv() const {
  const FieldCtx& f = *ctx_;
  if (is_zero()) throw Error(Errc::InvalidArgument, "inverse of zero");
  Fe r = *this;
  if (f.k == 1) {
    r.c_[0] = static_cast<Coeff>(inv_mod(c_[0], f.p));
    return r;
  }
  // Extended Euclid on (modulus, a).
  Poly r0 = f.modulus;
  Poly r1(c_.begin(), c_.begin() + f.k);
  trim(r1);
  Poly s0, s1{1};
  while (deg(r1) > 0) {
    auto [q, rem] = divmod(r0, r1, f.p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) {
        qs[i + j] = static_cast<std::uint32_t>((qs[i + j] + std::uint64_t{q[i]} * s1[j]) % f.p);
      }
    }
    Poly s = sub(s0, qs, f.p);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  const std::uint64_t c_inv = inv_mod(r1[0], f.p);
  r.c_.fill(0);
  for (std::size_t i = 0; i < s1.size() && i < static_cast<std::size_t>(f.k); ++i) {
    r.c_[i] = static_cast<Coeff>(s1[i] * c_inv % f.p);
  }
  return r;
}

Fe Fe::pow(std::uint64_t e) const {
  Fe result = *this;
  result.c_.fill(0);
  result.c_[0] = 1;
  Fe base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Fe Fe::pow(const BigInt& e) const {
  Fe result = *this;
  result.c_.fill(0);
  result.c_[0] = 1;
  if (e.is_zero()) return result;
  const auto top = static_cast<long>(boost::multiprecision::msb(e));
  for (long bit = top; bit >= 0; --bit) {
    result *= result;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) result *= *this;
  }
  return result;
}

Fe Fe::frobenius(int times) const {
  const FieldCtx& f = *ctx_;
  if (f.k == 1) return *this;
  Fe cur = *this;
  for (int step = 0; step < times % f.k; ++step) {
    std::array<std::uint64_t, kMaxExtensionDegree> acc{};
    for (int i = 0; i < f.k; ++i) {
      const std::uint64_t a = cur.c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      const auto& row = f.frobenius[static_cast<std::size_t>(i)];
      for (int j = 0; j < f.k; ++j) acc[static_cast<std::size_t>(j)] += a * row[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < f.k; ++j) cur.c_[static_cast<std::size_t>(j)] = static_cast<Coeff>(acc[static_cast<std::size_t>(j)] % f.p);
  }
  return cur;
}

std::strong_ordering operator<=>(const Fe& a, const Fe& b) {
  for (std::size_t i = kMaxExtensionDegree; i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t Fe::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto c : c_) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint32_t p) {
  check_characteristic(p);
  return Field(make_ctx(p, {}));
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  check_characteristic(p);
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.empty() || modulus.back() != 1) {
    throw Error(Errc::InvalidArgument, "modulus must be monic");
  }
  if (deg(modulus) > kMaxExtensionDegree) {
    throw Error(Errc::DegreeOverflow, "extension degree " + std::to_string(deg(modulus)) + " exceeds storage bound");
  }
  if (deg(modulus) == 1) return prime(p);
  if (!is_irreducible_mod_p(modulus, p)) throw Error(Errc::Reducible, "modulus is reducible");
  return Field(make_ctx(p, std::move(modulus)));
}

Field Field::canonical(std::uint32_t p, int degree) {
  check_characteristic(p);
  if (degree < 1) throw Error(Errc::InvalidArgument, "degree must be positive");
  if (degree == 1) return prime(p);
  if (degree > kMaxExtensionDegree) {
    throw Error(Errc::DegreeOverflow, "extension degree " + std::to_string(degree) + " exceeds storage bound");
  }
  Poly f(static_cast<std::size_t>(degree) + 1, 0);
  f.back() = 1;
  // Count through coefficient vectors as base-p integers; the constant term
  // is the least significant digit and must be nonzero.
  while (true) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(degree); ++i) {
      if (++f[i] < p) break;
      f[i] = 0;
    }
    if (f[0] == 0) continue;
    if (is_irreducible_mod_p(f, p)) return Field(make_ctx(p, f));
  }
}

Field Field::parse(std::string_view spec) {
  auto trimmed = spec;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  const auto caret = trimmed.find('^');
  if (caret == std::string_view::npos) {
    return prime(static_cast<std::uint32_t>(parse_uint(trimmed, "characteristic")));
  }
  const auto slash = trimmed.find('/');
  if (slash == std::string_view::npos || slash < caret) {
    throw Error(Errc::ParseError, "field spec needs the form p^k/c0,...,ck");
  }
  const auto p = static_cast<std::uint32_t>(parse_uint(trimmed.substr(0, caret), "characteristic"));
  const auto k = parse_uint(trimmed.substr(caret + 1, slash - caret - 1), "degree");
  Poly modulus;
  auto rest = trimmed.substr(slash + 1);
  while (true) {
    const auto comma = rest.find(',');
    modulus.push_back(static_cast<std::uint32_t>(parse_uint(rest.substr(0, comma), "coefficient")));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (modulus.size() != k + 1) throw Error(Errc::ParseError, "modulus length does not match degree");
  return with_modulus(p, std::move(modulus));
}

BigInt Field::size() const {
  BigInt q = 1;
  for (int i = 0; i < ctx_->k; ++i) q *= ctx_->p;
  return q;
}

std::string Field::spec() const {
  std::string out = std::to_string(ctx_->p);
  if (ctx_->k == 1) return out;
  out += "^" + std::to_string(ctx_->k) + "/";
  for (std::size_t i = 0; i < ctx_->modulus.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(ctx_->modulus[i]);
  }
  return out;
}

Fe Field::zero() const {
  Fe a;
  a.ctx_ = ctx_.get();
  return a;
}

Fe Field::one() const {
  Fe a = zero();
  a.c_[0] = 1;
  return a;
}

Fe Field::from_int(std::int64_t v) const {
  Fe a = zero();
  const auto p = static_cast<std::int64_t>(ctx_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  a.c_[0] = static_cast<Fe::Coeff>(r);
  return a;
}

Fe Field::generator() const {
  if (ctx_->k == 1) return one();
  Fe a = zero();
  a.c_[1] = 1;
  return a;
}

Fe Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  // Reduce arbitrary-length coefficient vectors through the ring structure.
  Fe result = zero();
  Fe power = one();
  const Fe t = generator();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (ctx_->k == 1) {
      result += from_int(coeffs[i]);
      continue;
    }
    result += from_int(coeffs[i]) * power;
    power *= t;
  }
  return result;
}

Fe Field::from_index(std::uint64_t index) const {
  Fe a = zero();
  for (int i = 0; i < ctx_->k; ++i) {
    a.c_[static_cast<std::size_t>(i)] = static_cast<Fe::Coeff>(index % ctx_->p);
    index /= ctx_->p;
  }
  return a;
}

std::uint64_t Field::index_of(const Fe& a) const {
  std::uint64_t index = 0;
  for (int i = ctx_->k; i-- > 0;) index = index * ctx_->p + a.coeff(i);
  return index;
}

std::string Field::format(const Fe& a) const {
  if (ctx_->k == 1) return std::to_string(a.coeff(0));
  std::string out;
  for (int i = ctx_->k; i-- > 0;) {
    const auto c = a.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Fe Field::parse_element(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error(Errc::ParseError, "empty field element");
  Fe result = zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) throw Error(Errc::ParseError, "bad field element '" + s + "'");
    Fe value = one();
    const auto t_pos = term.find('t');
    if (t_pos == std::string_view::npos) {
      value = from_int(static_cast<std::int64_t>(parse_uint(term, "field element") % ctx_->p));
    } else {
      if (ctx_->k == 1) throw Error(Errc::ParseError, "prime field elements have no 't'");
      auto coeff_part = term.substr(0, t_pos);
      if (!coeff_part.empty()) {
        if (coeff_part.back() != '*') throw Error(Errc::ParseError, "expected '*' before t");
        coeff_part.remove_suffix(1);
        value = from_int(static_cast<std::int64_t>(parse_uint(coeff_part, "coefficient") % ctx_->p));
      }
      auto exp_part = term.substr(t_pos + 1);
      std::uint64_t e = 1;
      if (!exp_part.empty()) {
        if (exp_part.front() != '^') throw Error(Errc::ParseError, "expected '^' after t");
        e = parse_uint(exp_part.substr(1), "exponent");
      }
      value *= generator().pow(e);
    }
    result += negative ? -value : value;
    pos = end;
  }
  return result;
}

bool operator==(const Field& a, const Field& b) {
  if (a.ctx_ == b.ctx_) return true;
  if (!a.ctx_ || !b.ctx_) return false;
  return a.ctx_->p == b.ctx_->p && a.ctx_->modulus == b.ctx_->modulus;
}

}  // namespace flexline
