#include "flexline/upoly.hpp"

#include <algorithm>
#include <numeric>

#include "flexline/error.hpp"

namespace flexline {

namespace {

// splitmix64; seeds are derived from the polynomial being split so that
// every run produces the same factor order.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
  }
};

std::uint64_t poly_seed(const UPoly& f) {
  std::uint64_t h = 0x51ed270b27a1f3c5ULL ^ f.field().characteristic();
  h = h * 1099511628211ULL + static_cast<std::uint64_t>(f.field().degree());
  for (const auto& c : f.coeffs()) h = h * 1099511628211ULL + c.hash();
  return h;
}

Fe random_element(const Field& field, SplitMix& rng) {
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(field.degree()));
  for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.next() % field.characteristic());
  return field.from_coeffs(coeffs);
}

bool coeff_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto cmp = a.coeff(i) <=> b.coeff(i);
    if (cmp != 0) return cmp < 0;
  }
  return false;
}

}  // namespace

UPoly::UPoly(Field field, std::vector<Fe> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Field& field, const Fe& c, int degree) {
  std::vector<Fe> coeffs(static_cast<std::size_t>(degree) + 1, field.zero());
  coeffs.back() = c;
  return UPoly(field, std::move(coeffs));
}

UPoly UPoly::linear(const Field& field, const Fe& a) { return UPoly(field, {-a, field.one()}); }

UPoly UPoly::from_ints(const Field& field, const std::vector<std::int64_t>& coeffs) {
  std::vector<Fe> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(field.from_int(v));
  return UPoly(field, std::move(c));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Fe UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return field_.zero();
  return coeffs_[static_cast<std::size_t>(i)];
}

Fe UPoly::leading() const { return is_zero() ? field_.zero() : coeffs_.back(); }

UPoly& UPoly::operator+=(const UPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_.zero());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_.zero());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Fe> prod(coeffs_.size() + o.coeffs_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(prod);
  trim();
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPoly UPoly::scaled(const Fe& c) const {
  UPoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

Fe UPoly::eval(const Fe& x) const {
  Fe acc = field_.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return UPoly(field_);
  std::vector<Fe> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(coeffs_[static_cast<std::size_t>(i)] * field_.from_int(i));
  return UPoly(field_, std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inv());
}

UPoly UPoly::mapped(const Embedding& e) const {
  std::vector<Fe> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(e(x));
  return UPoly(e.target(), std::move(c));
}

std::string UPoly::format(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Fe& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    const bool compound = field_.degree() > 1 && !c.in_prime_subfield();
    std::string cs = field_.format(c);
    if (compound) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

DivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  const Field& field = a.field().valid() ? a.field() : b.field();
  if (a.degree() < b.degree()) return {UPoly(field), a};
  std::vector<Fe> rem = a.coeffs();
  std::vector<Fe> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), field.zero());
  const Fe lead_inv = b.leading().inv();
  const int db = b.degree();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    const Fe c = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly(field, std::move(quot)), UPoly(field, std::move(rem))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).remainder; }

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(Errc::InvalidArgument, "inexact polynomial division");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly powmod(const UPoly& base, const BigInt& e, const UPoly& modulus) {
  const Field& field = modulus.field();
  UPoly result(field, {field.one()});
  result = result % modulus;
  if (e.is_zero()) return result;
  const UPoly b = base % modulus;
  const auto top = static_cast<long>(boost::multiprecision::msb(e));
  for (long bit = top; bit >= 0; --bit) {
    result = (result * result) % modulus;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) result = (result * b) % modulus;
  }
  return result;
}

bool is_irreducible(const UPoly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Field& field = f.field();
  const UPoly g = f.monic();
  const UPoly t = UPoly::monomial(field, field.one(), 1);
  const BigInt q = field.size();
  std::vector<UPoly> frob{t % g};
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), q, g));
  if (!(frob[static_cast<std::size_t>(n)] - t).is_zero()) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    if (gcd(frob[static_cast<std::size_t>(n / static_cast<int>(r))] - t, g).degree() > 0) return false;
  }
  return true;
}

int multiplicity(const UPoly& f, const UPoly& g) {
  if (g.degree() < 1) throw Error(Errc::InvalidArgument, "multiplicity of a constant");
  int m = 0;
  UPoly cur = f;
  while (true) {
    auto [q, r] = divmod(cur, g);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

std::vector<DegreeFactor> distinct_degree_factors(const UPoly& f) {
  std::vector<DegreeFactor> out;
  if (f.degree() < 1) return out;
  const Field& field = f.field();
  const BigInt q = field.size();
  const UPoly t = UPoly::monomial(field, field.one(), 1);
  UPoly rem = f.monic();
  UPoly h = t % rem;
  for (int d = 1; rem.degree() > 0; ++d) {
    h = powmod(h, q, rem);
    UPoly g = gcd(h - t, rem);
    if (g.degree() <= 0) continue;
    out.push_back({d, g});
    // Strip every power of these factors so later gcds see only new ones.
    while (true) {
      UPoly common = gcd(rem, g);
      if (common.degree() <= 0) break;
      rem = exact_div(rem, common);
    }
    if (rem.degree() > 0) h = h % rem;
  }
  return out;
}

std::vector<UPoly> equal_degree_split(const UPoly& f, int d) {
  const UPoly g = f.monic();
  const int n = g.degree();
  if (n <= d) return {g};
  const Field& field = g.field();
  BigInt exponent = 1;
  for (int i = 0; i < d; ++i) exponent *= field.size();
  exponent = (exponent - 1) / 2;
  SplitMix rng{poly_seed(g)};
  std::vector<UPoly> pending{g};
  std::vector<UPoly> done;
  while (!pending.empty()) {
    UPoly cur = std::move(pending.back());
    pending.pop_back();
    if (cur.degree() == d) {
      done.push_back(std::move(cur));
      continue;
    }
    while (true) {
      std::vector<Fe> coeffs;
      for (int i = 0; i < cur.degree(); ++i) coeffs.push_back(random_element(field, rng));
      const UPoly a(field, std::move(coeffs));
      if (a.degree() < 1) continue;
      UPoly b = powmod(a, exponent, cur) - UPoly(field, {field.one()});
      UPoly split = gcd(b, cur);
      if (split.degree() > 0 && split.degree() < cur.degree()) {
        pending.push_back(exact_div(cur, split));
        pending.push_back(std::move(split));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end(), coeff_less);
  return done;
}

std::vector<Factor> factor(const UPoly& f) {
  std::vector<Factor> out;
  for (const auto& part : distinct_degree_factors(f)) {
    for (auto& g : equal_degree_split(part.product, part.degree)) {
      const int m = multiplicity(f, g);
      out.push_back({std::move(g), m});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return coeff_less(a.poly, b.poly); });
  return out;
}

std::vector<RootMult> roots_with_multiplicity(const UPoly& f) {
  if (f.is_zero()) throw Error(Errc::InvalidArgument, "roots of the zero polynomial");
  std::vector<RootMult> out;
  if (f.degree() < 1) return out;
  const Field& field = f.field();
  const UPoly g = f.monic();
  const UPoly t = UPoly::monomial(field, field.one(), 1);
  const UPoly linear_part = gcd(powmod(t, field.size(), g) - t, g);
  if (linear_part.degree() < 1) return out;
  for (const auto& lin : equal_degree_split(linear_part, 1)) {
    const Fe r = -lin.coeff(0);
    out.push_back({r, multiplicity(g, UPoly::linear(field, r))});
  }
  std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) { return a.root < b.root; });
  return out;
}

Splitting splitting_roots(const UPoly& f, int degree_cap) {
  if (f.is_zero()) throw Error(Errc::InvalidArgument, "splitting field of the zero polynomial");
  const Field& base = f.field();
  const auto factors = factor(f);
  int relative = 1;
  for (const auto& fac : factors) relative = std::lcm(relative, fac.poly.degree());
  const int total = base.degree() * relative;
  if (total > degree_cap || total > kMaxExtensionDegree) {
    throw Error(Errc::DegreeOverflow, "splitting field needs degree " + std::to_string(total) + " over F_" +
                                          std::to_string(base.characteristic()) + " (cap " +
                                          std::to_string(degree_cap) + ")");
  }
  Splitting out;
  out.field = relative == 1 ? base : Field::canonical(base.characteristic(), total);
  out.from_base = default_embedding(base, out.field);
  for (const auto& fac : factors) {
    for (const auto& rm : roots_with_multiplicity(fac.poly.mapped(out.from_base))) {
      out.roots.push_back({rm.root, fac.multiplicity});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const RootMult& a, const RootMult& b) { return a.root < b.root; });
  return out;
}

}  // namespace flexline
