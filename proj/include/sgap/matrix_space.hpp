#pragma once

// Linear spans of matrices with a canonical reduced basis, and the maximum
// rank attained over the span.
//
// Over a small finite field the maximum of rank on the span as written can be
// strictly smaller than the maximum after extending scalars. The geometric
// quantity is the one after extension, so by default the search lifts a small
// field into an extension with at least kGenericFieldSize elements and samples
// there. With lifting disabled the search enumerates the whole span when that
// is feasible and refuses otherwise.

#include <cstdint>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/field.hpp"
#include "sgap/matrix.hpp"
#include "sgap/rng.hpp"

namespace sgap {

template <class E>
class MatrixSpace {
 public:
  MatrixSpace(std::size_t rows, std::size_t cols, std::vector<Matrix<E>> gens, const E& proto)
      : rows_(rows), cols_(cols), proto_(zero_like(proto)) {
    for (const auto& g : gens)
      if (g.rows() != rows || g.cols() != cols) throw shape_error("generator shape mismatch");
    reduce(std::move(gens));
  }

  std::size_t ambient_rows() const { return rows_; }
  std::size_t ambient_cols() const { return cols_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix<E>>& basis() const { return basis_; }
  const E& proto() const { return proto_; }

  bool contains(const Matrix<E>& m) const {
    if (m.rows() != rows_ || m.cols() != cols_) return false;
    if (m.is_zero()) return true;
    if (basis_.empty()) return false;
    Matrix<E> stacked(basis_.size() + 1, rows_ * cols_, proto_);
    for (std::size_t b = 0; b < basis_.size(); ++b)
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) stacked.at(b, i * cols_ + j) = basis_[b].at(i, j);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) stacked.at(basis_.size(), i * cols_ + j) = m.at(i, j);
    return rank_of(stacked) == basis_.size();
  }

  Matrix<E> combination(const Vec<E>& coeffs) const {
    if (coeffs.size() != basis_.size()) throw shape_error("coefficient count mismatch");
    Matrix<E> m(rows_, cols_, proto_);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      if (coeffs[b].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) += coeffs[b] * basis_[b].at(i, j);
    }
    return m;
  }

 private:
  void reduce(std::vector<Matrix<E>> gens) {
    std::vector<Matrix<E>> nonzero;
    for (auto& g : gens)
      if (!g.is_zero()) nonzero.push_back(std::move(g));
    if (nonzero.empty()) return;
    Matrix<E> stacked(nonzero.size(), rows_ * cols_, proto_);
    for (std::size_t b = 0; b < nonzero.size(); ++b)
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) stacked.at(b, i * cols_ + j) = nonzero[b].at(i, j);
    auto rr = rref_with_transform(stacked);
    for (std::size_t r = 0; r < rr.rank; ++r) {
      Matrix<E> m(rows_, cols_, proto_);
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = rr.reduced.at(r, i * cols_ + j);
      basis_.push_back(std::move(m));
    }
  }

  std::size_t rows_, cols_;
  E proto_;
  std::vector<Matrix<E>> basis_;
};

// The space {P * B * Q : B in s}.
template <class E>
MatrixSpace<E> conjugate_space(const MatrixSpace<E>& s, const Matrix<E>& p, const Matrix<E>& q) {
  std::vector<Matrix<E>> gens;
  gens.reserve(s.dim());
  for (const auto& b : s.basis()) gens.push_back(p * b * q);
  return MatrixSpace<E>(p.rows(), q.cols(), std::move(gens), zero_like(s.proto()));
}

// ---------------------------------------------------------------------------
// Embedding a small finite field into an extension of size >= min_size.

inline FqCtxPtr lift_context(std::uint64_t p, std::uint64_t k, std::uint64_t min_size) {
  std::uint64_t big_k = k;
  std::uint64_t size = 1;
  for (std::uint64_t i = 0; i < big_k; ++i) size *= p;
  while (size < min_size) {
    big_k += k;  // the subfield needs k to divide the extension degree
    size = 1;
    for (std::uint64_t i = 0; i < big_k; ++i) size *= p;
  }
  return make_extension(p, big_k);
}

inline Fq embed_constant(const Fp& x, const FqCtxPtr& big) {
  return Fq(std::vector<std::uint64_t>{x.value()}, big);
}

// Image of the generator of GF(p^k): a root of the small field's modulus in
// the big field, found by direct enumeration (the lifted field stays tiny).
inline Fq generator_image(const FqCtxPtr& small, const FqCtxPtr& big) {
  const std::uint64_t n = big->size();
  const Fq zero(std::vector<std::uint64_t>{0}, big);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    Fq cand = element_at_like(zero, idx);
    Fq acc(std::vector<std::uint64_t>{small->modulus.back()}, big);
    for (std::size_t d = small->modulus.size() - 1; d-- > 0;) {
      acc = acc * cand + Fq(std::vector<std::uint64_t>{small->modulus[d]}, big);
    }
    if (acc.is_zero()) return cand;
  }
  throw internal_error("no root of subfield modulus in extension");
}

inline Fq embed_element(const Fq& x, const Fq& gen_image) {
  Fq acc = zero_like(gen_image);
  Fq pw = one_like(gen_image);
  for (std::size_t d = 0; d < x.coeffs().size(); ++d) {
    if (x.coeffs()[d] != 0) acc += Fq(std::vector<std::uint64_t>{x.coeffs()[d]}, gen_image.ctx()) * pw;
    pw *= gen_image;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Maximum rank over the span.

struct MaxRankOptions {
  bool field_lift = true;
  int trials = 20;
  std::uint64_t exhaustive_limit = 1000000;
};

namespace detail {

template <class E>
std::size_t max_rank_sampled(const MatrixSpace<E>& s, Rng& rng, int trials) {
  std::size_t best = 0;
  for (const auto& b : s.basis()) best = std::max(best, rank_of(b));
  const std::size_t cap = std::min(s.ambient_rows(), s.ambient_cols());
  Vec<E> ones(s.dim(), one_like(s.proto()));
  best = std::max(best, rank_of(s.combination(ones)));
  for (int t = 0; t < trials && best < cap; ++t) {
    Vec<E> c;
    c.reserve(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) c.push_back(sample_like(s.proto(), rng));
    best = std::max(best, rank_of(s.combination(c)));
  }
  return best;
}

template <class E>
std::size_t max_rank_exhaustive(const MatrixSpace<E>& s, std::uint64_t q, std::uint64_t limit) {
  // q^dim combinations, coefficients read off as base-q digits
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (total > limit / q + 1) throw small_field_error("span too large to enumerate; enable field lifting");
    total *= q;
    if (total > limit) throw small_field_error("span too large to enumerate; enable field lifting");
  }
  std::size_t best = 0;
  const std::size_t cap = std::min(s.ambient_rows(), s.ambient_cols());
  for (std::uint64_t idx = 1; idx < total && best < cap; ++idx) {
    std::uint64_t rest = idx;
    Vec<E> c;
    c.reserve(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
      c.push_back(element_at_like(s.proto(), rest % q));
      rest /= q;
    }
    best = std::max(best, rank_of(s.combination(c)));
  }
  return best;
}

inline MatrixSpace<Fq> lift_space_fp(const MatrixSpace<Fp>& s, const FqCtxPtr& big) {
  std::vector<Matrix<Fq>> gens;
  const Fq zero(std::vector<std::uint64_t>{0}, big);
  for (const auto& b : s.basis()) {
    Matrix<Fq> m(b.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) = embed_constant(b.at(i, j), big);
    gens.push_back(std::move(m));
  }
  return MatrixSpace<Fq>(s.ambient_rows(), s.ambient_cols(), std::move(gens), zero);
}

inline MatrixSpace<Fq> lift_space_fq(const MatrixSpace<Fq>& s, const FqCtxPtr& big) {
  const Fq gen = generator_image(s.proto().ctx(), big);
  std::vector<Matrix<Fq>> gens;
  const Fq zero = zero_like(gen);
  for (const auto& b : s.basis()) {
    Matrix<Fq> m(b.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) = embed_element(b.at(i, j), gen);
    gens.push_back(std::move(m));
  }
  return MatrixSpace<Fq>(s.ambient_rows(), s.ambient_cols(), std::move(gens), zero);
}

}  // namespace detail

// Maximum rank attained on the span after extending scalars to a field with
// at least kGenericFieldSize elements (the geometric value). Sampling gives a
// lower bound that is correct with overwhelming probability over the lifted
// field; exhaustive enumeration is exact and used when lifting is disabled.
template <class E>
std::size_t max_rank(const MatrixSpace<E>& s, Rng& rng, const MaxRankOptions& opts = {}) {
  if (s.dim() == 0) throw degenerate_input_error("maximum rank of the zero span");
  const std::uint64_t q = field_size_like(s.proto());
  if (q == 0) return detail::max_rank_sampled(s, rng, opts.trials);  // infinite field
  if (!opts.field_lift) return detail::max_rank_exhaustive(s, q, opts.exhaustive_limit);
  if (q >= kGenericFieldSize) return detail::max_rank_sampled(s, rng, opts.trials);
  if constexpr (std::is_same_v<E, Fp>) {
    auto big = lift_context(field_characteristic_like(s.proto()), 1, kGenericFieldSize);
    return detail::max_rank_sampled(detail::lift_space_fp(s, big), rng, opts.trials);
  } else if constexpr (std::is_same_v<E, Fq>) {
    auto big = lift_context(s.proto().ctx()->p, s.proto().ctx()->k, kGenericFieldSize);
    return detail::max_rank_sampled(detail::lift_space_fq(s, big), rng, opts.trials);
  } else {
    throw internal_error("field lift requested for an unexpected field type");
  }
}

}  // namespace sgap
