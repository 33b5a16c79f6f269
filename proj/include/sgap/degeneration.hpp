#pragma once

// Certificates and the algebra normalization pipeline.
//
// A restriction certificate is a matrix triple whose action sends the source
// tensor exactly onto the target. A degeneration certificate is a triple of
// Laurent matrices: applying it to the source gives target + higher order
// error terms, with no negative exponent surviving. Both kinds are verified
// by recomputation, never trusted.
//
// The normalization step turns a tensor of format (n,n,n) whose first two
// slice spans contain invertible matrices into the multiplication tensor of
// an n-dimensional unital algebra: a basis change after which slice 1 of
// factor 1 and slice 1 of factor 2 both act as the identity. Scaling the
// unit direction with opposite Laurent weights then degenerates any such
// form onto the null algebra tensor, with error exponents 3 and 6 only.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sgap/corpus.hpp"
#include "sgap/errors.hpp"
#include "sgap/laurent.hpp"
#include "sgap/matrix.hpp"
#include "sgap/matrix_space.hpp"
#include "sgap/rng.hpp"
#include "sgap/tensor.hpp"

namespace sgap {

namespace detail {

// Factor permutation moving the given direction (1-based) to the last slot
// while keeping the other two factors in order.
inline std::array<int, 3> direction_to_last(int direction) {
  if (direction == 1) return {2, 0, 1};
  if (direction == 2) return {0, 2, 1};
  return {0, 1, 2};
}

}  // namespace detail

template <class E>
struct RestrictionCertificate {
  std::array<Matrix<E>, 3> maps;
  Tensor3<E> target;
};

template <class E>
struct DegenerationCertificate {
  LaurentMatrix<E> a, b, c;
  Tensor3<E> target;
  std::int64_t max_error_order = 0;
};

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

template <class E>
VerifyResult verify_restriction(const Tensor3<E>& source, const RestrictionCertificate<E>& cert) {
  for (int f = 0; f < 3; ++f) {
    const auto& m = cert.maps[static_cast<std::size_t>(f)];
    if (m.cols() != source.dim(static_cast<std::size_t>(f)) ||
        m.rows() != cert.target.dim(static_cast<std::size_t>(f)))
      return {false, "map shapes do not connect source and target"};
  }
  if (apply_maps(source, cert.maps) != cert.target) return {false, "restriction image mismatch"};
  return {true, {}};
}

template <class E>
VerifyResult verify_degeneration(const Tensor3<E>& source, const DegenerationCertificate<E>& cert) {
  const std::array<const LaurentMatrix<E>*, 3> maps{&cert.a, &cert.b, &cert.c};
  for (int f = 0; f < 3; ++f) {
    if (maps[static_cast<std::size_t>(f)]->cols() != source.dim(static_cast<std::size_t>(f)) ||
        maps[static_cast<std::size_t>(f)]->rows() != cert.target.dim(static_cast<std::size_t>(f)))
      return {false, "map shapes do not connect source and target"};
  }
  const auto expansion = apply_laurent(source, cert.a, cert.b, cert.c);
  if (!expansion.empty() && expansion.begin()->first < 0)
    return {false, "negative epsilon exponent survives"};
  auto zero_term = expansion.find(0);
  if (zero_term == expansion.end()) {
    if (!cert.target.is_zero()) return {false, "epsilon^0 mismatch"};
  } else if (zero_term->second != cert.target) {
    return {false, "epsilon^0 mismatch"};
  }
  if (!expansion.empty() && expansion.rbegin()->first > cert.max_error_order)
    return {false, "error order exceeds declared bound"};
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Unital algebra form: format (n,n,n) with
//   t[1,b,c] = delta(b,c)  and  t[a,1,c] = delta(a,c)
// in 1-based indexing. The entries with both first indices >= 2 are the
// structure constants and are unconstrained.

template <class E>
bool is_unital_algebra_form(const Tensor3<E>& t) {
  const std::size_t n = t.dim(0);
  if (t.dim(1) != n || t.dim(2) != n) return false;
  const E zero = zero_like(t.proto());
  const E one = one_like(t.proto());
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      if (t.at(0, b, c) != (b == c ? one : zero)) return false;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      if (t.at(a, 0, c) != (a == c ? one : zero)) return false;
  return true;
}

template <class E>
struct AlgebraForm {
  std::array<Matrix<E>, 3> base_change;  // invertible; sends the input onto normal_form
  Tensor3<E> normal_form;                // satisfies is_unital_algebra_form
};

// Normalize a tensor with invertible elements in its first two slice spans to
// a unital algebra multiplication tensor. Sampling: pick alpha, beta with
//   P = sum_a alpha_a t[a,.,.]   and   Q = sum_b beta_b t[.,b,.]
// invertible, set gamma_c = sum_{a,b} alpha_a beta_b t[a,b,c] (nonzero since
// gamma = beta P), pick invertible X3 with X3 gamma = e1, and take
//   X1 = X3^{-T} Q^{-1},   X2 = X3^{-T} P^{-1}.
// Then row 1 of X1 is alpha and row 1 of X2 is beta, so the transformed
// tensor has identity slices in the two required directions.
template <class E>
AlgebraForm<E> to_unital_algebra_form(const Tensor3<E>& t, Rng& rng,
                                      const MaxRankOptions& opts = {}, int max_attempts = 10) {
  const std::size_t n = t.dim(0);
  if (t.dim(1) != n || t.dim(2) != n)
    throw shape_error("algebra normalization needs a cube-format tensor");
  const E zero = zero_like(t.proto());
  if (is_unital_algebra_form(t)) {
    const Matrix<E> id = Matrix<E>::identity(n, zero);
    return AlgebraForm<E>{{id, id, id}, t};
  }
  const auto q = slice_span_max_ranks(t, rng, opts);
  if (q[0] != n || q[1] != n)
    throw degenerate_input_error(
        "algebra normalization needs full slice span rank in the first two directions");

  auto contract = [&](int d, const Vec<E>& w) {
    Matrix<E> m(n, n, zero);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          m.at(r, c) += w[a] * (d == 1 ? t.at(a, r, c) : t.at(r, a, c));
    return m;
  };

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Vec<E> alpha(n, zero), beta(n, zero);
    for (std::size_t i = 0; i < n; ++i) alpha[i] = sample_like(t.proto(), rng);
    for (std::size_t i = 0; i < n; ++i) beta[i] = sample_like(t.proto(), rng);
    const Matrix<E> p = contract(1, alpha);
    if (!is_invertible(p)) continue;
    const Matrix<E> q2 = contract(2, beta);
    if (!is_invertible(q2)) continue;
    Vec<E> gamma(n, zero);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t b2 = 0; b2 < n; ++b2) gamma[c] += beta[b2] * p.at(b2, c);
    if (is_zero_vec(gamma)) continue;
    const Matrix<E> m = complete_to_basis(gamma, rng);  // first column is gamma
    const Matrix<E> mt = m.transpose();                 // X3^{-T}
    const std::array<Matrix<E>, 3> maps{mt * inverse(q2), mt * inverse(p), inverse(m)};
    Tensor3<E> form = apply_maps(t, maps);
    if (!is_unital_algebra_form(form))
      throw internal_error("normalized tensor failed the unital form check");
    return AlgebraForm<E>{maps, std::move(form)};
  }
  throw genericity_error("kept sampling singular slice combinations during normalization");
}

// Degeneration of a unital algebra form onto the null algebra tensor of the
// same size: weights -2, -2, 4 on the unit direction of the three factors and
// weight 1 elsewhere kill the structure constants. Unit times unit lands at
// exponent 0, structure constants land at exponent 3 (product direction not
// the unit) or 6 (product direction the unit).
template <class E>
DegenerationCertificate<E> null_algebra_degeneration(const AlgebraForm<E>& form) {
  const std::size_t n = form.normal_form.dim(0);
  if (n < 2) throw shape_error("null algebra degeneration needs size at least 2");
  const E zero = zero_like(form.normal_form.proto());
  std::vector<std::int64_t> in_weights(n, 1), out_weights(n, 1);
  in_weights[0] = -2;
  out_weights[0] = 4;
  const auto d12 = LaurentMatrix<E>::diagonal_powers(in_weights, zero);
  const auto d3 = LaurentMatrix<E>::diagonal_powers(out_weights, zero);
  DegenerationCertificate<E> cert{
      d12 * LaurentMatrix<E>::from_scalar(form.base_change[0]),
      d12 * LaurentMatrix<E>::from_scalar(form.base_change[1]),
      d3 * LaurentMatrix<E>::from_scalar(form.base_change[2]),
      corpus::null_algebra(n, 3, zero),
      0};
  const auto expansion = apply_laurent(form.normal_form, d12, d12, d3);
  if (!expansion.empty()) cert.max_error_order = expansion.rbegin()->first;
  for (const auto& [e, term] : expansion)
    if (e != 0 && e != 3 && e != 6)
      throw internal_error("degeneration produced an unexpected error exponent");
  if (expansion.find(0) == expansion.end() || expansion.at(0) != cert.target)
    throw internal_error("degeneration does not start at the null algebra tensor");
  return cert;
}

// Full pipeline: degenerate any tensor whose two slice spans away from the
// chosen direction have maximum rank at least 3 onto the size 3 null algebra
// tensor distinguished in that direction. Steps: generic restriction to
// format (3,3,3), factor permutation moving the chosen direction last,
// algebra normalization, diagonal degeneration, then undoing the permutation
// by distributing the Laurent maps back to the original factors.
template <class E>
DegenerationCertificate<E> degenerate_to_null_algebra(const Tensor3<E>& t, int direction, Rng& rng,
                                                      const MaxRankOptions& opts = {}) {
  if (direction < 1 || direction > 3) throw shape_error("direction must be 1, 2 or 3");
  if (t.is_zero()) throw degenerate_input_error("cannot degenerate the zero tensor");
  const auto q = slice_span_max_ranks(t, rng, opts);
  for (int d = 0; d < 3; ++d)
    if (d != direction - 1 && q[static_cast<std::size_t>(d)] < 3)
      throw degenerate_input_error(
          "slice spans away from the chosen direction must reach rank 3");

  const auto gr = generic_restrict(t, {3, 3, 3}, rng, opts);
  const std::array<int, 3> sigma = direction == 1   ? std::array<int, 3>{2, 0, 1}
                                   : direction == 2 ? std::array<int, 3>{0, 2, 1}
                                                    : std::array<int, 3>{0, 1, 2};
  const Tensor3<E> cube = permute_factors(gr.tensor, sigma);
  const auto form = to_unital_algebra_form(cube, rng, opts);
  const auto base = null_algebra_degeneration(form);
  const std::array<const LaurentMatrix<E>*, 3> cube_maps{&base.a, &base.b, &base.c};
  auto compose = [&](int f) {
    return *cube_maps[static_cast<std::size_t>(sigma[static_cast<std::size_t>(f)])] *
           LaurentMatrix<E>::from_scalar(gr.maps[static_cast<std::size_t>(f)]);
  };
  DegenerationCertificate<E> cert{compose(0), compose(1), compose(2),
                                  corpus::null_algebra(3, direction, zero_like(t.proto())),
                                  base.max_error_order};
  const auto check = verify_degeneration(t, cert);
  if (!check.ok)
    throw internal_error("null algebra degeneration failed re-verification: " + check.reason);
  return cert;
}

}  // namespace sgap
