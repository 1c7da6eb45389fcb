#pragma once

// Field embeddings F_{p^a} -> F_{p^b}, extensions by a root, root extraction.
//
// Every field is flattened to a single extension of F_p. An embedding is
// fixed by the image of the source generator, which must be a root of the
// source modulus in the target.

#include <vector>

#include "flexline/gf.hpp"

namespace flexline {

class UPoly;

class Embedding {
 public:
  Embedding() = default;
  Embedding(Field src, Field dst, const Fe& generator_image);
  static Embedding identity(const Field& field);

  const Field& source() const { return src_; }
  const Field& target() const { return dst_; }
  Fe generator_image() const;
  bool is_identity() const { return identity_; }

  Fe operator()(const Fe& a) const;
  /// x -> next(this(x)).
  Embedding then(const Embedding& next) const;

 private:
  Field src_;
  Field dst_;
  bool identity_ = false;
  std::vector<Fe> powers_;  // images of t^i, 0 <= i < deg src
};

/// All embeddings src -> dst, ordered by the image of the source generator.
/// Throws NoEmbedding if the characteristics differ or deg src does not
/// divide deg dst.
std::vector<Embedding> all_embeddings(const Field& src, const Field& dst);

/// The identity when src == dst, otherwise the embedding with the smallest
/// generator image.
Embedding default_embedding(const Field& src, const Field& dst);

/// The first embedding src -> dst (in the order of all_embeddings) that
/// agrees with base_to_dst on the common subfield, i.e. such that
/// result(base_to_src(x)) == base_to_dst(x).
Embedding extend_embedding(const Embedding& base_to_src, const Embedding& base_to_dst);

Fe embed(const Field& src, const Field& dst, const Fe& a);

/// Canonical field of degree lcm(deg a, deg b).
Field compositum(const Field& a, const Field& b, int degree_cap = kMaxExtensionDegree);

struct Extension {
  Field field;
  Embedding from_base;
  Fe root;
};

/// Adjoins a root of the irreducible polynomial f. The result is the
/// canonical field of the product degree; root is the smallest root of f there.
Extension extend(const UPoly& f);

/// An n-th root of a (or, with primitive set and a == 1, a primitive n-th
/// root of unity) in the smallest extension containing one; the smallest such
/// element of that field is returned.
Extension find_nth_root(const Field& base, const Fe& a, int n, bool primitive = false,
                        int degree_cap = kDefaultDegreeCap);

}  // namespace flexline
