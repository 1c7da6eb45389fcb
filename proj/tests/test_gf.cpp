#include <random>

#include "doctest.h"
#include "flexline/embedding.hpp"
#include "flexline/error.hpp"
#include "flexline/gf.hpp"
#include "flexline/upoly.hpp"

using namespace flexline;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidArgument;
}

Fe random_fe(const Field& f, std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(f.degree()));
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % f.characteristic());
  return f.from_coeffs(c);
}

}  // namespace

TEST_CASE("prime field construction") {
  CHECK(Field::prime(7).characteristic() == 7);
  CHECK(Field::prime(13).degree() == 1);
  CHECK(code_of([] { Field::prime(3); }) == Errc::ExcludedCharacteristic);
  CHECK(code_of([] { Field::prime(2); }) == Errc::ExcludedCharacteristic);
  CHECK(code_of([] { Field::prime(9); }) == Errc::NotPrime);
  CHECK(code_of([] { Field::prime(1); }) == Errc::NotPrime);
}

TEST_CASE("extension by an irreducible polynomial") {
  const Field f13 = Field::prime(13);
  auto ext = extend(UPoly::from_ints(f13, {-2, 0, 1}));
  CHECK(ext.field.size() == 169);
  CHECK(ext.root * ext.root == ext.field.from_int(2));

  const Field f7 = Field::prime(7);
  auto ext7 = extend(UPoly::from_ints(f7, {1, 0, 1}));
  CHECK(ext7.field.size() == 49);
  CHECK(code_of([&] { extend(UPoly::from_ints(f13, {-1, 0, 1})); }) == Errc::Reducible);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair{5U, 1}, {7U, 2}, {13U, 3}, {31U, 4}, {5U, 8}, {17U, 12}}) {
    const Field f = Field::canonical(p, k);
    CHECK(f.degree() == k);
    for (int trial = 0; trial < 30; ++trial) {
      const Fe a = random_fe(f, rng);
      const Fe b = random_fe(f, rng);
      const Fe c = random_fe(f, rng);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      CHECK(a - a == f.zero());
      if (!a.is_zero()) {
        CHECK(a * a.inv() == f.one());
        CHECK(a.pow(f.size() - 1).is_one());
      }
      CHECK(a.frobenius(k) == a);
      CHECK(a.frobenius() == a.pow(static_cast<std::uint64_t>(p)));
    }
  }
}

TEST_CASE("field spec strings round-trip") {
  const Field f = Field::parse("13^2/11,0,1");
  CHECK(f.degree() == 2);
  CHECK(f.spec() == "13^2/11,0,1");
  CHECK(Field::parse(f.spec()) == f);
  CHECK(Field::parse("31").spec() == "31");
  const Fe a = f.parse_element("3*t+5");
  CHECK(f.format(a) == "3*t+5");
  CHECK(a * a == f.parse_element("3*t+5") * f.parse_element("3*t+5"));
  CHECK(code_of([] { Field::parse("13^2/1,0,1"); }) == Errc::Reducible);
}

TEST_CASE("canonical moduli are the least irreducible polynomials") {
  // Brute force over all monic quadratics t^2 + a t + b, ordered by (a, b).
  for (std::uint32_t p : {5U, 7U, 13U}) {
    std::vector<std::uint32_t> expected;
    for (std::uint32_t a = 0; a < p && expected.empty(); ++a) {
      for (std::uint32_t b = 1; b < p && expected.empty(); ++b) {
        bool has_root = false;
        for (std::uint32_t x = 0; x < p; ++x) has_root |= (x * x + a * x + b) % p == 0;
        if (!has_root) expected = {b, a, 1};
      }
    }
    CHECK(Field::canonical(p, 2).modulus() == expected);
  }
}

TEST_CASE("find_nth_root examples") {
  auto r = find_nth_root(Field::prime(31), Field::prime(31).from_int(7), 2);
  CHECK(r.field.degree() == 1);
  CHECK(r.root.coeff(0) == 10);

  auto i13 = find_nth_root(Field::prime(13), Field::prime(13).one(), 4, true);
  CHECK(i13.root.coeff(0) == 5);

  auto e17 = find_nth_root(Field::prime(17), Field::prime(17).one(), 8, true);
  CHECK(e17.root.coeff(0) == 2);

  auto s19 = find_nth_root(Field::prime(19), Field::prime(19).from_int(7), 2);
  CHECK(s19.root.coeff(0) == 8);

  // A primitive 8th root over F_7 needs F_49.
  auto e7 = find_nth_root(Field::prime(7), Field::prime(7).one(), 8, true);
  CHECK(e7.field.degree() == 2);
  CHECK(e7.root.pow(8).is_one());
  CHECK(!e7.root.pow(4).is_one());

  // A square root of 2 over F_13 lives in F_169.
  auto s13 = find_nth_root(Field::prime(13), Field::prime(13).from_int(2), 2);
  CHECK(s13.field.degree() == 2);
  CHECK(s13.root * s13.root == s13.field.from_int(2));

  CHECK(code_of([] { find_nth_root(Field::prime(5), Field::prime(5).one(), 11, true, 4); }) ==
        Errc::DegreeOverflow);
}

TEST_CASE("embeddings") {
  const Field f13 = Field::prime(13);
  const Field f169 = Field::canonical(13, 2);
  CHECK(embed(f13, f169, f13.from_int(5)) == f169.from_int(5));

  const Field f7 = Field::prime(7);
  CHECK(embed(f7, f7, f7.from_int(3)) == f7.from_int(3));

  const Field f49 = Field::canonical(7, 2);
  const auto all = all_embeddings(f49, f49);
  REQUIRE(all.size() == 2);
  std::mt19937_64 rng(3);
  const Fe a = random_fe(f49, rng);
  bool saw_identity = false;
  bool saw_frobenius = false;
  for (const auto& e : all) {
    saw_identity |= e(a) == a && e.is_identity();
    saw_frobenius |= e(a) == a.pow(7ULL) && !e.is_identity();
  }
  CHECK(saw_identity);
  CHECK(saw_frobenius);

  CHECK_THROWS_AS(all_embeddings(f49, Field::canonical(7, 3)), Error);
  CHECK_THROWS_AS(all_embeddings(f49, Field::canonical(13, 2)), Error);
}

TEST_CASE("embeddings are ring homomorphisms and compose along towers") {
  std::mt19937_64 rng(11);
  const Field f2 = Field::canonical(5, 2);
  const Field f4 = Field::canonical(5, 4);
  const Field f8 = Field::canonical(5, 8);
  const Embedding a = default_embedding(f2, f4);
  const Embedding b = extend_embedding(a, default_embedding(f2, f8));
  const Embedding direct = default_embedding(f2, f8);
  for (int trial = 0; trial < 20; ++trial) {
    const Fe x = random_fe(f2, rng);
    const Fe y = random_fe(f2, rng);
    CHECK(a(x * y) == a(x) * a(y));
    CHECK(a(x + y) == a(x) + a(y));
    CHECK(b(a(x)) == direct(x));
    CHECK(a.then(b)(x) == direct(x));
  }
}

TEST_CASE("element index bijection") {
  const Field f = Field::canonical(7, 2);
  for (std::uint64_t i = 0; i < 49; ++i) {
    CHECK(f.index_of(f.from_index(i)) == i);
    if (i > 0) CHECK(f.from_index(i - 1) < f.from_index(i));
  }
}
