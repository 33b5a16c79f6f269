#include <catch2/catch_amalgamated.hpp>

#include "sgap/field.hpp"
#include "sgap/rng.hpp"

using namespace sgap;

TEST_CASE("prime field arithmetic over GF(7)") {
  const Fp a(3, 7), b(5, 7);
  CHECK((a + b).value() == 1);
  CHECK((a * b).value() == 1);
  CHECK((a - b).value() == 5);
  CHECK((-a).value() == 4);
  CHECK(a.inv().value() == 5);
  CHECK((a / b).value() == (a * b.inv()).value());
  CHECK(Fp::from_int(-1, 7).value() == 6);
  CHECK(Fp::from_int(-15, 7).value() == 6);
  CHECK(Fp(0, 7).is_zero());
  CHECK_THROWS_AS(Fp(0, 7).inv(), singular_error);
}

TEST_CASE("Fermat identity for all nonzero elements of GF(7)") {
  for (std::uint64_t v = 1; v < 7; ++v) {
    Fp x(v, 7);
    Fp acc = one_like(x);
    for (int i = 0; i < 6; ++i) acc *= x;
    CHECK(acc.value() == 1);
  }
}

TEST_CASE("mixing elements of different prime fields is rejected") {
  CHECK_THROWS_AS(Fp(1, 7) + Fp(1, 11), field_mismatch_error);
  CHECK_THROWS_AS(Fp(1, 7) == Fp(1, 11), field_mismatch_error);
}

TEST_CASE("deterministic primality testing") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(101));
  CHECK(is_prime_u64(7919));
  CHECK(is_prime_u64((1ull << 61) - 1));
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(91));
  CHECK_FALSE(is_prime_u64(561));
}

TEST_CASE("extension contexts pick the first irreducible modulus") {
  auto f4 = make_extension(2, 2);
  CHECK(f4->size() == 4);
  // x^2 + x + 1 is the only monic irreducible quadratic over GF(2)
  CHECK(f4->modulus == std::vector<std::uint64_t>{1, 1, 1});
  auto f8 = make_extension(2, 3);
  CHECK(f8->size() == 8);
  // candidates in constant-first counting order: x^3, x^3+1, x^3+x, then x^3+x+1
  CHECK(f8->modulus == std::vector<std::uint64_t>{1, 1, 0, 1});
  auto again = make_extension(2, 3);
  CHECK(again->modulus == f8->modulus);
  auto f128 = make_extension(2, 7);
  CHECK(f128->size() == 128);
  CHECK(f128->modulus.size() == 8);
}

TEST_CASE("GF(4) multiplicative structure") {
  auto ctx = make_extension(2, 2);
  const Fq g({0, 1}, ctx);
  const Fq one = one_like(g);
  CHECK(g * g == g + one);
  CHECK(g * g * g == one);
  CHECK(g.inv() == g + one);
  CHECK((g + g).is_zero());
}

TEST_CASE("Frobenius is additive in characteristic 2") {
  auto ctx = make_extension(2, 3);
  for (std::uint64_t i = 0; i < 8; ++i)
    for (std::uint64_t j = 0; j < 8; ++j) {
      Fq a = element_at_like(Fq({0}, ctx), i);
      Fq b = element_at_like(Fq({0}, ctx), j);
      CHECK((a + b) * (a + b) == a * a + b * b);
    }
}

TEST_CASE("inverses across GF(2^7)") {
  auto ctx = make_extension(2, 7);
  const Fq proto({0}, ctx);
  for (std::uint64_t i = 1; i < 40; ++i) {
    Fq a = element_at_like(proto, i);
    CHECK(a * a.inv() == one_like(proto));
  }
}

TEST_CASE("element enumeration is a bijection on GF(8)") {
  auto ctx = make_extension(2, 3);
  const Fq proto({0}, ctx);
  std::vector<Fq> seen;
  for (std::uint64_t i = 0; i < 8; ++i) {
    Fq e = element_at_like(proto, i);
    for (const auto& s : seen) CHECK(s != e);
    seen.push_back(e);
  }
}

TEST_CASE("rational arithmetic is exact and normalized") {
  const Rat a(2, 6);
  CHECK(a.str() == "1/3");
  const Rat b(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((Rat(2, 3) * Rat(3, 2)).str() == "1");
  CHECK(from_int_like(a, -5).str() == "-5");
  CHECK_THROWS_AS(zero_like(a).inv(), singular_error);
  CHECK((a - a).is_zero());
}

TEST_CASE("field size and characteristic helpers") {
  CHECK(field_size_like(Fp(0, 7)) == 7);
  CHECK(field_characteristic_like(Fp(0, 7)) == 7);
  auto f4 = make_extension(2, 2);
  CHECK(field_size_like(Fq({0}, f4)) == 4);
  CHECK(field_characteristic_like(Fq({0}, f4)) == 2);
  CHECK(field_size_like(Rat()) == 0);
  CHECK(field_characteristic_like(Rat()) == 0);
}

TEST_CASE("field specifications format and validate") {
  CHECK(FieldSpec::rationals().str() == "Qq");
  CHECK(FieldSpec::prime(7).str() == "GF(7)");
  CHECK(FieldSpec::extension(make_extension(2, 7)).str() == "GF(2^7)");
  CHECK_THROWS_AS(FieldSpec::prime(6), degenerate_input_error);
  CHECK_THROWS_AS(FieldSpec::prime(1), degenerate_input_error);
}

TEST_CASE("random streams are reproducible and seed-sensitive") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    auto x = a.next(), y = b.next(), z = c.next();
    all_equal = all_equal && (x == y);
    any_diff = any_diff || (x != z);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("bounded sampling stays in range and covers the range") {
  Rng rng(7);
  std::vector<bool> hit(5, false);
  for (int i = 0; i < 200; ++i) {
    auto v = rng.bounded(5);
    REQUIRE(v < 5);
    hit[v] = true;
  }
  for (bool h : hit) CHECK(h);
  for (int i = 0; i < 50; ++i) {
    auto v = rng.range(3, 9);
    REQUIRE(v >= 3);
    REQUIRE(v <= 9);
  }
}

TEST_CASE("field element sampling is deterministic per seed") {
  Rng a(11), b(11);
  const Fp proto(0, 101);
  for (int i = 0; i < 32; ++i) CHECK(sample_like(proto, a) == sample_like(proto, b));
  auto ctx = make_extension(2, 7);
  Rng c(5), d(5);
  const Fq fproto({0}, ctx);
  for (int i = 0; i < 32; ++i) CHECK(sample_like(fproto, c) == sample_like(fproto, d));
}
