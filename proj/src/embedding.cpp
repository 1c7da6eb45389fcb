#include "flexline/embedding.hpp"

#include <algorithm>
#include <numeric>

#include "flexline/error.hpp"
#include "flexline/upoly.hpp"

namespace flexline {

namespace {

void check_compatible(const Field& src, const Field& dst) {
  if (src.characteristic() != dst.characteristic()) {
    throw Error(Errc::NoEmbedding, "characteristics differ");
  }
  if (dst.degree() % src.degree() != 0) {
    throw Error(Errc::NoEmbedding, "degree " + std::to_string(src.degree()) + " does not divide " +
                                       std::to_string(dst.degree()));
  }
}

UPoly modulus_over(const Field& src, const Field& dst) {
  std::vector<std::int64_t> coeffs(src.modulus().begin(), src.modulus().end());
  return UPoly::from_ints(dst, coeffs);
}

}  // namespace

Embedding::Embedding(Field src, Field dst, const Fe& generator_image) : src_(std::move(src)), dst_(std::move(dst)) {
  Fe power = dst_.one();
  for (int i = 0; i < src_.degree(); ++i) {
    powers_.push_back(power);
    power *= generator_image;
  }
}

Embedding Embedding::identity(const Field& field) {
  Embedding e(field, field, field.generator());
  e.identity_ = true;
  return e;
}

Fe Embedding::generator_image() const {
  return src_.degree() == 1 ? dst_.one() : powers_[1];
}

Fe Embedding::operator()(const Fe& a) const {
  if (identity_) {
    std::array<std::uint32_t, kMaxExtensionDegree> c{};
    for (int i = 0; i < src_.degree(); ++i) c[static_cast<std::size_t>(i)] = a.coeff(i);
    return dst_.from_coeffs(std::span<const std::uint32_t>(c.data(), static_cast<std::size_t>(src_.degree())));
  }
  if (src_.degree() == 1) return dst_.from_int(a.coeff(0));
  Fe out = dst_.zero();
  for (int i = 0; i < src_.degree(); ++i) {
    const auto c = a.coeff(i);
    if (c != 0) out += dst_.from_int(c) * powers_[static_cast<std::size_t>(i)];
  }
  return out;
}

Embedding Embedding::then(const Embedding& next) const {
  if (identity_) return next;
  if (next.identity_) return *this;
  return Embedding(src_, next.dst_, next(generator_image()));
}

std::vector<Embedding> all_embeddings(const Field& src, const Field& dst) {
  check_compatible(src, dst);
  if (src.degree() == 1) return {Embedding(src, dst, dst.one())};
  std::vector<Embedding> out;
  for (const auto& rm : roots_with_multiplicity(modulus_over(src, dst))) {
    if (src == dst && rm.root == dst.generator()) {
      out.push_back(Embedding::identity(dst));
    } else {
      out.emplace_back(src, dst, rm.root);
    }
  }
  return out;
}

Embedding default_embedding(const Field& src, const Field& dst) {
  if (src == dst) return Embedding::identity(dst);
  auto all = all_embeddings(src, dst);
  if (all.empty()) throw Error(Errc::NoEmbedding, "modulus has no root in target");
  return all.front();
}

Embedding extend_embedding(const Embedding& base_to_src, const Embedding& base_to_dst) {
  const Field& src = base_to_src.target();
  const Field& dst = base_to_dst.target();
  const Fe g = base_to_src.source().generator();
  const Fe g_src = base_to_src(g);
  const Fe g_dst = base_to_dst(g);
  auto candidates = all_embeddings(src, dst);
  // The identity goes first when it qualifies.
  std::stable_partition(candidates.begin(), candidates.end(), [](const Embedding& e) { return e.is_identity(); });
  for (const auto& e : candidates) {
    if (e(g_src) == g_dst) return e;
  }
  throw Error(Errc::NoEmbedding, "no embedding extends the given base embedding");
}

Fe embed(const Field& src, const Field& dst, const Fe& a) { return default_embedding(src, dst)(a); }

Field compositum(const Field& a, const Field& b, int degree_cap) {
  if (a.characteristic() != b.characteristic()) throw Error(Errc::NoEmbedding, "characteristics differ");
  const int n = std::lcm(a.degree(), b.degree());
  if (n > degree_cap) {
    throw Error(Errc::DegreeOverflow, "compositum needs degree " + std::to_string(n));
  }
  if (n == a.degree()) return a;
  if (n == b.degree()) return b;
  return Field::canonical(a.characteristic(), n);
}

Extension extend(const UPoly& f) {
  const Field& base = f.field();
  if (f.degree() < 1) throw Error(Errc::InvalidArgument, "cannot adjoin a root of a constant");
  if (!is_irreducible(f)) throw Error(Errc::Reducible, f.format() + " is reducible");
  if (f.degree() == 1) {
    const UPoly g = f.monic();
    return {base, Embedding::identity(base), -g.coeff(0)};
  }
  const int total = base.degree() * f.degree();
  if (total > kMaxExtensionDegree) {
    throw Error(Errc::DegreeOverflow, "extension degree " + std::to_string(total) + " exceeds storage bound");
  }
  Extension out;
  out.field = Field::canonical(base.characteristic(), total);
  out.from_base = default_embedding(base, out.field);
  const auto roots = roots_with_multiplicity(f.mapped(out.from_base));
  out.root = roots.front().root;
  return out;
}

Extension find_nth_root(const Field& base, const Fe& a, int n, bool primitive, int degree_cap) {
  if (n < 1) throw Error(Errc::InvalidArgument, "root index must be positive");
  const std::uint32_t p = base.characteristic();
  int relative = 1;
  if (primitive) {
    if (!a.is_one()) throw Error(Errc::InvalidArgument, "primitive roots are roots of unity");
    if (n % static_cast<int>(p) == 0) {
      throw Error(Errc::InvalidArgument, "no primitive " + std::to_string(n) + "-th roots in characteristic " +
                                             std::to_string(p));
    }
    const auto q_mod = static_cast<std::uint64_t>(base.size() % n);
    std::uint64_t acc = q_mod % static_cast<std::uint64_t>(n);
    while (acc != 1 % static_cast<std::uint64_t>(n)) {
      acc = acc * q_mod % static_cast<std::uint64_t>(n);
      ++relative;
    }
  } else {
    if (a.is_zero()) throw Error(Errc::InvalidArgument, "root of zero requested");
    std::vector<Fe> coeffs(static_cast<std::size_t>(n) + 1, base.zero());
    coeffs.front() = -a;
    coeffs.back() = base.one();
    relative = n;
    for (const auto& fac : factor(UPoly(base, coeffs))) relative = std::min(relative, fac.poly.degree());
  }
  const int total = base.degree() * relative;
  if (total > degree_cap || total > kMaxExtensionDegree) {
    throw Error(Errc::DegreeOverflow, "root needs an extension of degree " + std::to_string(total) + " (cap " +
                                          std::to_string(degree_cap) + ")");
  }
  Extension out;
  out.field = relative == 1 ? base : Field::canonical(p, total);
  out.from_base = default_embedding(base, out.field);
  std::vector<Fe> coeffs(static_cast<std::size_t>(n) + 1, out.field.zero());
  coeffs.front() = -out.from_base(a);
  coeffs.back() = out.field.one();
  const auto primes = prime_factors(static_cast<std::uint64_t>(n));
  for (const auto& rm : roots_with_multiplicity(UPoly(out.field, coeffs))) {
    if (primitive) {
      const bool exact = std::all_of(primes.begin(), primes.end(), [&](std::uint64_t l) {
        return !rm.root.pow(static_cast<std::uint64_t>(n) / l).is_one();
      });
      if (!exact) continue;
    }
    out.root = rm.root;
    return out;
  }
  throw Error(Errc::InvalidArgument, "no root found");
}

}  // namespace flexline
