#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "sgap/corpus.hpp"
#include "sgap/degeneration.hpp"
#include "sgap/laurent.hpp"
#include "sgap/rng.hpp"

using namespace sgap;
using sgap::testing::make_matrix;
using sgap::testing::make_tensor;

namespace {

const Fp p101(0, 101);

// Multiplication tensor of K[x]/(x^3) in the monomial basis 1, x, x^2:
// x^a x^b = x^{a+b}, truncated above degree 2. Already a unital algebra form
// with the single structure constant at (2, 2, 3) in 1-based indexing.
template <class E>
Tensor3<E> truncated_polynomial_tensor(const E& proto) {
  return make_tensor(3, 3, 3, proto,
                     {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {2, 0, 2, 1}, {1, 1, 2, 1}});
}

// Unital algebra form of size n with uniformly random structure constants.
template <class E>
Tensor3<E> random_unital_form(std::size_t n, const E& proto, Rng& rng) {
  Tensor3<E> t = corpus::null_algebra(n, 3, proto);
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) t.at(a, b, c) = sample_like(proto, rng);
  return t;
}

template <class E>
std::set<std::int64_t> exponent_set(const std::map<std::int64_t, Tensor3<E>>& expansion) {
  std::set<std::int64_t> keys;
  for (const auto& [e, term] : expansion) keys.insert(e);
  return keys;
}

}  // namespace

TEST_CASE("laurent polynomial arithmetic") {
  const Fp one = one_like(p101);
  auto x2 = LaurentPoly<Fp>::monomial(2, one);
  auto xm1 = LaurentPoly<Fp>::monomial(-1, from_int_like(p101, 3));
  auto prod = x2 * xm1;
  CHECK(prod.terms.size() == 1);
  CHECK(prod.terms.at(1) == from_int_like(p101, 3));
  auto sum = x2 + x2;
  CHECK(sum.terms.at(2) == from_int_like(p101, 2));
  auto cancel = x2 + LaurentPoly<Fp>::monomial(2, from_int_like(p101, -1));
  CHECK(cancel.is_zero());
  CHECK(xm1.min_exponent() == -1);
  CHECK((x2 + xm1).max_exponent() == 2);
  // evaluation at a point, negative exponent through the inverse
  const Fp v = from_int_like(p101, 7);
  CHECK(xm1.evaluate(v) == from_int_like(p101, 3) * v.inv());
}

TEST_CASE("applying identity laurent maps returns the tensor at exponent zero") {
  const auto t = corpus::w_state(p101);
  const auto id = LaurentMatrix<Fp>::from_scalar(Matrix<Fp>::identity(2, p101));
  const auto expansion = apply_laurent(t, id, id, id);
  REQUIRE(expansion.size() == 1);
  CHECK(expansion.at(0) == t);
}

TEST_CASE("scaling one factor by epsilon shifts the whole expansion") {
  const auto t = corpus::w_state(p101);
  const auto id = LaurentMatrix<Fp>::from_scalar(Matrix<Fp>::identity(2, p101));
  const auto eps = LaurentMatrix<Fp>::diagonal_powers({1, 1}, p101);
  const auto expansion = apply_laurent(t, eps, id, id);
  REQUIRE(expansion.size() == 1);
  CHECK(expansion.at(1) == t);
}

TEST_CASE("laurent expansion matches scalar evaluation of the maps") {
  Rng rng(20260822);
  const Fp proto = p101;
  for (int trial = 0; trial < 10; ++trial) {
    // random tensor and random laurent maps with exponents in [-2, 3]
    Tensor3<Fp> t(3, 3, 3, zero_like(proto));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) t.at(i, j, k) = sample_like(proto, rng);
    auto random_laurent = [&] {
      LaurentMatrix<Fp> m(3, 3, proto);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (int term = 0; term < 2; ++term)
            m.at(i, j).add_term(rng.range(-2, 3), sample_like(proto, rng));
      return m;
    };
    const auto a = random_laurent(), b = random_laurent(), c = random_laurent();
    const auto expansion = apply_laurent(t, a, b, c);
    const Fp v = from_int_like(proto, rng.range(1, 100));
    Tensor3<Fp> direct = apply_maps(t, a.evaluate(v), b.evaluate(v), c.evaluate(v));
    Tensor3<Fp> summed(3, 3, 3, zero_like(proto));
    for (const auto& [e, term] : expansion) {
      const Fp scale = detail::eval_power(v, e);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k) summed.at(i, j, k) += scale * term.at(i, j, k);
    }
    CHECK(summed == direct);
  }
}

TEST_CASE("unital algebra form predicate") {
  CHECK(is_unital_algebra_form(corpus::null_algebra(3, 3, p101)));
  CHECK(is_unital_algebra_form(truncated_polynomial_tensor(p101)));
  CHECK_FALSE(is_unital_algebra_form(corpus::w_state(p101)));
  CHECK_FALSE(is_unital_algebra_form(corpus::diagonal(3, p101)));
  CHECK_FALSE(is_unital_algebra_form(corpus::null_algebra(3, 1, p101)));
}

TEST_CASE("normalization fast path keeps an existing unital form") {
  Rng rng(1);
  const auto t = truncated_polynomial_tensor(p101);
  const auto form = to_unital_algebra_form(t, rng);
  CHECK(form.normal_form == t);
  CHECK(form.base_change[0] == Matrix<Fp>::identity(3, p101));
  CHECK(form.base_change[1] == Matrix<Fp>::identity(3, p101));
  CHECK(form.base_change[2] == Matrix<Fp>::identity(3, p101));
}

TEST_CASE("normalization recovers a unital form after a random basis change") {
  Rng rng(42);
  const auto t = truncated_polynomial_tensor(p101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_invertible(3, p101, rng);
    const auto b = random_invertible(3, p101, rng);
    const auto c = random_invertible(3, p101, rng);
    const Tensor3<Fp> hidden = apply_maps(t, a, b, c);
    const auto form = to_unital_algebra_form(hidden, rng);
    CHECK(is_unital_algebra_form(form.normal_form));
    CHECK(apply_maps(hidden, form.base_change) == form.normal_form);
    for (const auto& m : form.base_change) CHECK(is_invertible(m));
  }
}

TEST_CASE("normalization of random tensors with full first two slice spans") {
  Rng rng(7);
  int done = 0;
  while (done < 10) {
    Tensor3<Fp> t(3, 3, 3, zero_like(p101));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) t.at(i, j, k) = sample_like(p101, rng);
    const auto q = slice_span_max_ranks(t, rng);
    if (q[0] != 3 || q[1] != 3) continue;  // skip the rare degenerate draw
    ++done;
    const auto form = to_unital_algebra_form(t, rng);
    CHECK(is_unital_algebra_form(form.normal_form));
    CHECK(apply_maps(t, form.base_change) == form.normal_form);
  }
}

TEST_CASE("normalization handles the two dimensional case") {
  Rng rng(3);
  const auto w = corpus::w_state(p101);
  const auto form = to_unital_algebra_form(w, rng);
  CHECK(is_unital_algebra_form(form.normal_form));
  CHECK(apply_maps(w, form.base_change) == form.normal_form);
}

TEST_CASE("normalization preconditions") {
  Rng rng(4);
  // two nonzero diagonal slices inside a 3x3x3 format: slice spans reach rank 2 only
  const auto padded = make_tensor(3, 3, 3, p101, {{0, 0, 0, 1}, {1, 1, 1, 1}});
  CHECK_THROWS_AS(to_unital_algebra_form(padded, rng), degenerate_input_error);
  Tensor3<Fp> oblong(2, 2, 3, zero_like(p101));
  oblong.at(0, 0, 0) = one_like(p101);
  CHECK_THROWS_AS(to_unital_algebra_form(oblong, rng), shape_error);
}

TEST_CASE("null algebra degeneration of a form without structure constants") {
  Rng rng(5);
  const auto t = corpus::null_algebra(4, 3, p101);
  const auto form = to_unital_algebra_form(t, rng);
  const auto cert = null_algebra_degeneration(form);
  CHECK(cert.max_error_order == 0);
  CHECK(cert.target == t);
  const auto check = verify_degeneration(t, cert);
  CHECK(check.ok);
  CHECK(check.reason.empty());
}

TEST_CASE("null algebra degeneration kills random structure constants") {
  // the error terms must sit at exponents 3 and 6 only, for every size and seed
  for (std::size_t n : {3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(1000 * n + seed);
      const auto t = random_unital_form(n, p101, rng);
      const auto form = to_unital_algebra_form(t, rng);
      const auto cert = null_algebra_degeneration(form);
      REQUIRE(verify_degeneration(t, cert).ok);
      const auto expansion = apply_laurent(t, cert.a, cert.b, cert.c);
      REQUIRE(expansion.find(0) != expansion.end());
      CHECK(expansion.at(0) == corpus::null_algebra(n, 3, p101));
      for (const auto e : exponent_set(expansion)) CHECK((e == 0 || e == 3 || e == 6));
      CHECK(cert.max_error_order <= 6);
    }
  }
}

TEST_CASE("null algebra degeneration over the rationals and a small field") {
  const Rat rproto(0);
  Rng rng(6);
  const auto t = random_unital_form(3, rproto, rng);
  const auto cert = null_algebra_degeneration(to_unital_algebra_form(t, rng));
  CHECK(verify_degeneration(t, cert).ok);

  const Fp p7(0, 7);
  const auto t7 = random_unital_form(3, p7, rng);
  const auto cert7 = null_algebra_degeneration(to_unital_algebra_form(t7, rng));
  CHECK(verify_degeneration(t7, cert7).ok);
}

TEST_CASE("truncated polynomial algebra degenerates with a single error term") {
  Rng rng(8);
  const auto t = truncated_polynomial_tensor(p101);
  const auto cert = null_algebra_degeneration(to_unital_algebra_form(t, rng));
  CHECK(verify_degeneration(t, cert).ok);
  const auto expansion = apply_laurent(t, cert.a, cert.b, cert.c);
  CHECK(exponent_set(expansion) == std::set<std::int64_t>{0, 3});
  CHECK(cert.max_error_order == 3);
}

TEST_CASE("degeneration certificates evaluate consistently at scalar points") {
  Rng rng(9);
  const auto t = random_unital_form(3, p101, rng);
  const auto cert = null_algebra_degeneration(to_unital_algebra_form(t, rng));
  const auto expansion = apply_laurent(t, cert.a, cert.b, cert.c);
  for (int trial = 0; trial < 10; ++trial) {
    const Fp v = from_int_like(p101, rng.range(1, 100));
    const auto direct = apply_maps(t, cert.a.evaluate(v), cert.b.evaluate(v), cert.c.evaluate(v));
    Tensor3<Fp> summed(3, 3, 3, zero_like(p101));
    for (const auto& [e, term] : expansion) {
      const Fp scale = detail::eval_power(v, e);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k) summed.at(i, j, k) += scale * term.at(i, j, k);
    }
    CHECK(summed == direct);
  }
}

TEST_CASE("full pipeline reaches the null algebra tensor from the corpus") {
  Rng rng(10);
  const auto n3 = corpus::null_algebra(3, 3, p101);

  SECTION("the null algebra tensor itself") {
    const auto cert = degenerate_to_null_algebra(n3, 3, rng);
    CHECK(cert.target == n3);
    CHECK(verify_degeneration(n3, cert).ok);
  }

  SECTION("diagonal of size three, every direction") {
    const auto d3 = corpus::diagonal(3, p101);
    for (int k = 1; k <= 3; ++k) {
      const auto cert = degenerate_to_null_algebra(d3, k, rng);
      CHECK(cert.target == corpus::null_algebra(3, k, p101));
      CHECK(verify_degeneration(d3, cert).ok);
    }
  }

  SECTION("larger null algebra restricts down to size three") {
    const auto n4 = corpus::null_algebra(4, 3, p101);
    const auto cert = degenerate_to_null_algebra(n4, 3, rng);
    CHECK(cert.target == n3);
    CHECK(verify_degeneration(n4, cert).ok);
  }

  SECTION("permuted null algebra tensors in their own direction") {
    for (int k = 1; k <= 2; ++k) {
      const auto nk = corpus::null_algebra(3, k, p101);
      const auto cert = degenerate_to_null_algebra(nk, k, rng);
      CHECK(cert.target == nk);
      CHECK(verify_degeneration(nk, cert).ok);
    }
  }
}

TEST_CASE("full pipeline on random tensors") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Tensor3<Fp> t(4, 4, 4, zero_like(p101));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) t.at(i, j, k) = sample_like(p101, rng);
    const int direction = 1 + static_cast<int>(rng.bounded(3));
    const auto cert = degenerate_to_null_algebra(t, direction, rng);
    CHECK(cert.target == corpus::null_algebra(3, direction, p101));
    CHECK(verify_degeneration(t, cert).ok);
  }
}

TEST_CASE("full pipeline preconditions") {
  Rng rng(12);
  CHECK_THROWS_AS(degenerate_to_null_algebra(corpus::w_state(p101), 3, rng),
                  degenerate_input_error);
  Tensor3<Fp> zero(3, 3, 3, zero_like(p101));
  CHECK_THROWS_AS(degenerate_to_null_algebra(zero, 3, rng), degenerate_input_error);
  CHECK_THROWS_AS(degenerate_to_null_algebra(corpus::diagonal(3, p101), 4, rng), shape_error);
}

TEST_CASE("degeneration verification failure reasons") {
  Rng rng(13);
  const auto d2 = corpus::diagonal(2, p101);
  const auto id = LaurentMatrix<Fp>::from_scalar(Matrix<Fp>::identity(2, p101));

  SECTION("negative exponent survives") {
    DegenerationCertificate<Fp> cert{LaurentMatrix<Fp>::diagonal_powers({-1, 0}, p101), id, id, d2, 0};
    const auto check = verify_degeneration(d2, cert);
    CHECK_FALSE(check.ok);
    CHECK(check.reason == "negative epsilon exponent survives");
  }

  SECTION("wrong constant term") {
    DegenerationCertificate<Fp> cert{id, id, id, corpus::w_state(p101), 0};
    const auto check = verify_degeneration(d2, cert);
    CHECK_FALSE(check.ok);
    CHECK(check.reason == "epsilon^0 mismatch");
  }

  SECTION("understated error order") {
    const auto t = random_unital_form(3, p101, rng);
    auto cert = null_algebra_degeneration(to_unital_algebra_form(t, rng));
    REQUIRE(cert.max_error_order > 0);
    cert.max_error_order = 0;
    const auto check = verify_degeneration(t, cert);
    CHECK_FALSE(check.ok);
    CHECK(check.reason == "error order exceeds declared bound");
  }

  SECTION("shape mismatch") {
    DegenerationCertificate<Fp> cert{id, id, id, d2, 0};
    const auto check = verify_degeneration(corpus::diagonal(3, p101), cert);
    CHECK_FALSE(check.ok);
    CHECK(check.reason == "map shapes do not connect source and target");
  }
}

TEST_CASE("restriction certificates verify exactly") {
  // pad the w tensor into a larger format, then certify the compression
  Tensor3<Fp> padded(3, 4, 3, zero_like(p101));
  const auto w = corpus::w_state(p101);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) padded.at(i, j, k) = w.at(i, j, k);
  const auto core = concise_core(padded);
  RestrictionCertificate<Fp> cert{core.to_core, core.core};
  CHECK(verify_restriction(padded, cert).ok);

  auto bad = cert;
  bad.maps[0].at(0, 0) += one_like(p101);
  const auto check = verify_restriction(padded, bad);
  CHECK_FALSE(check.ok);
  CHECK(check.reason == "restriction image mismatch");

  RestrictionCertificate<Fp> mis{cert.maps, corpus::diagonal(3, p101)};
  CHECK(verify_restriction(padded, mis).reason == "map shapes do not connect source and target");
}
