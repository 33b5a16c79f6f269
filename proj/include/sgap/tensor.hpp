#pragma once

// Order-3 tensors over an exact field, with the standard multilinear
// operations: flattenings, slice spans, the action of a matrix triple,
// Kronecker products, factor permutations, concise cores and generic
// restrictions to smaller formats.

#include <array>
#include <cstddef>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/matrix.hpp"
#include "sgap/matrix_space.hpp"
#include "sgap/rng.hpp"

namespace sgap {

template <class E>
class Tensor3 {
 public:
  Tensor3(std::size_t n1, std::size_t n2, std::size_t n3, const E& zero)
      : dims_{n1, n2, n3}, a_(n1 * n2 * n3, zero) {
    if (n1 == 0 || n2 == 0 || n3 == 0) throw shape_error("tensor dimensions must be positive");
  }

  const std::array<std::size_t, 3>& dims() const { return dims_; }
  std::size_t dim(std::size_t d) const { return dims_[d]; }  // 0-based factor index
  E& at(std::size_t i, std::size_t j, std::size_t k) { return a_[(i * dims_[1] + j) * dims_[2] + k]; }
  const E& at(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * dims_[1] + j) * dims_[2] + k];
  }
  const E& proto() const { return a_[0]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool operator==(const Tensor3& o) const { return dims_ == o.dims_ && a_ == o.a_; }
  bool operator!=(const Tensor3& o) const { return !(*this == o); }

 private:
  std::array<std::size_t, 3> dims_;
  std::vector<E> a_;
};

// Flattening in direction d (1, 2 or 3): rows are indexed by that factor,
// columns by the remaining two factors in increasing factor order.
template <class E>
Matrix<E> flatten(const Tensor3<E>& t, int d) {
  const auto& n = t.dims();
  Matrix<E> m(n[d - 1], n[0] * n[1] * n[2] / n[d - 1], zero_like(t.proto()));
  for (std::size_t i = 0; i < n[0]; ++i)
    for (std::size_t j = 0; j < n[1]; ++j)
      for (std::size_t k = 0; k < n[2]; ++k) {
        const E& v = t.at(i, j, k);
        if (d == 1)
          m.at(i, j * n[2] + k) = v;
        else if (d == 2)
          m.at(j, i * n[2] + k) = v;
        else
          m.at(k, i * n[1] + j) = v;
      }
  return m;
}

// Slices in direction d: the d-th index is fixed, the remaining two index the
// matrix in increasing factor order.
template <class E>
std::vector<Matrix<E>> slices(const Tensor3<E>& t, int d) {
  const auto& n = t.dims();
  std::vector<Matrix<E>> out;
  if (d == 1) {
    for (std::size_t i = 0; i < n[0]; ++i) {
      Matrix<E> m(n[1], n[2], zero_like(t.proto()));
      for (std::size_t j = 0; j < n[1]; ++j)
        for (std::size_t k = 0; k < n[2]; ++k) m.at(j, k) = t.at(i, j, k);
      out.push_back(std::move(m));
    }
  } else if (d == 2) {
    for (std::size_t j = 0; j < n[1]; ++j) {
      Matrix<E> m(n[0], n[2], zero_like(t.proto()));
      for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t k = 0; k < n[2]; ++k) m.at(i, k) = t.at(i, j, k);
      out.push_back(std::move(m));
    }
  } else {
    for (std::size_t k = 0; k < n[2]; ++k) {
      Matrix<E> m(n[0], n[1], zero_like(t.proto()));
      for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j) m.at(i, j) = t.at(i, j, k);
      out.push_back(std::move(m));
    }
  }
  return out;
}

template <class E>
Tensor3<E> tensor_from_slices3(const std::vector<Matrix<E>>& sl) {
  if (sl.empty()) throw shape_error("no slices given");
  Tensor3<E> t(sl[0].rows(), sl[0].cols(), sl.size(), zero_like(sl[0].proto()));
  for (std::size_t k = 0; k < sl.size(); ++k) {
    if (sl[k].rows() != sl[0].rows() || sl[k].cols() != sl[0].cols())
      throw shape_error("slice shape mismatch");
    for (std::size_t i = 0; i < sl[k].rows(); ++i)
      for (std::size_t j = 0; j < sl[k].cols(); ++j) t.at(i, j, k) = sl[k].at(i, j);
  }
  return t;
}

template <class E>
MatrixSpace<E> slice_space(const Tensor3<E>& t, int d) {
  auto sl = slices(t, d);
  const std::size_t r = sl[0].rows(), c = sl[0].cols();
  return MatrixSpace<E>(r, c, std::move(sl), zero_like(t.proto()));
}

template <class E>
std::array<std::size_t, 3> flattening_ranks(const Tensor3<E>& t) {
  return {rank_of(flatten(t, 1)), rank_of(flatten(t, 2)), rank_of(flatten(t, 3))};
}

// Action of a matrix triple: result[i',j',k'] = sum A[i',i] B[j',j] C[k',k] t[i,j,k],
// computed one factor at a time.
template <class E>
Tensor3<E> apply_maps(const Tensor3<E>& t, const Matrix<E>& a, const Matrix<E>& b, const Matrix<E>& c) {
  const auto& n = t.dims();
  if (a.cols() != n[0] || b.cols() != n[1] || c.cols() != n[2])
    throw shape_error("matrix triple does not match tensor format");
  const E zero = zero_like(t.proto());
  Tensor3<E> s1(a.rows(), n[1], n[2], zero);
  for (std::size_t ip = 0; ip < a.rows(); ++ip)
    for (std::size_t i = 0; i < n[0]; ++i) {
      const E& w = a.at(ip, i);
      if (w.is_zero()) continue;
      for (std::size_t j = 0; j < n[1]; ++j)
        for (std::size_t k = 0; k < n[2]; ++k) s1.at(ip, j, k) += w * t.at(i, j, k);
    }
  Tensor3<E> s2(a.rows(), b.rows(), n[2], zero);
  for (std::size_t jp = 0; jp < b.rows(); ++jp)
    for (std::size_t j = 0; j < n[1]; ++j) {
      const E& w = b.at(jp, j);
      if (w.is_zero()) continue;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < n[2]; ++k) s2.at(i, jp, k) += w * s1.at(i, j, k);
    }
  Tensor3<E> s3(a.rows(), b.rows(), c.rows(), zero);
  for (std::size_t kp = 0; kp < c.rows(); ++kp)
    for (std::size_t k = 0; k < n[2]; ++k) {
      const E& w = c.at(kp, k);
      if (w.is_zero()) continue;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) s3.at(i, j, kp) += w * s2.at(i, j, k);
    }
  return s3;
}

template <class E>
Tensor3<E> apply_maps(const Tensor3<E>& t, const std::array<Matrix<E>, 3>& maps) {
  return apply_maps(t, maps[0], maps[1], maps[2]);
}

// Kronecker product; the pair (index in s, index in t) for each factor f is
// flattened as is * t.dim(f) + it.
template <class E>
Tensor3<E> kronecker(const Tensor3<E>& s, const Tensor3<E>& t) {
  const auto& m = s.dims();
  const auto& n = t.dims();
  Tensor3<E> r(m[0] * n[0], m[1] * n[1], m[2] * n[2], zero_like(s.proto()));
  for (std::size_t i = 0; i < m[0]; ++i)
    for (std::size_t j = 0; j < m[1]; ++j)
      for (std::size_t k = 0; k < m[2]; ++k) {
        const E& v = s.at(i, j, k);
        if (v.is_zero()) continue;
        for (std::size_t a = 0; a < n[0]; ++a)
          for (std::size_t b = 0; b < n[1]; ++b)
            for (std::size_t c = 0; c < n[2]; ++c)
              r.at(i * n[0] + a, j * n[1] + b, k * n[2] + c) = v * t.at(a, b, c);
      }
  return r;
}

// Factor permutation: result[y0,y1,y2] = t[y(perm[0]), y(perm[1]), y(perm[2])]
// with 0-based perm, so factor perm[p] of the result feeds slot p of t.
template <class E>
Tensor3<E> permute_factors(const Tensor3<E>& t, const std::array<int, 3>& perm) {
  std::array<std::size_t, 3> nd{};
  for (int p = 0; p < 3; ++p) nd[static_cast<std::size_t>(perm[p])] = t.dim(p);
  Tensor3<E> r(nd[0], nd[1], nd[2], zero_like(t.proto()));
  std::array<std::size_t, 3> y{};
  for (y[0] = 0; y[0] < nd[0]; ++y[0])
    for (y[1] = 0; y[1] < nd[1]; ++y[1])
      for (y[2] = 0; y[2] < nd[2]; ++y[2])
        r.at(y[0], y[1], y[2]) = t.at(y[static_cast<std::size_t>(perm[0])],
                                      y[static_cast<std::size_t>(perm[1])],
                                      y[static_cast<std::size_t>(perm[2])]);
  return r;
}

// ---------------------------------------------------------------------------
// Concise core: compress each factor onto the support of the tensor. The
// returned maps witness equivalence in both directions, exactly:
//   apply_maps(t, to_core) == core   and   apply_maps(core, from_core) == t.

template <class E>
struct ConciseCore {
  Tensor3<E> core;
  std::array<Matrix<E>, 3> to_core;
  std::array<Matrix<E>, 3> from_core;
  std::array<std::size_t, 3> ranks;
};

template <class E>
ConciseCore<E> concise_core(const Tensor3<E>& t) {
  if (t.is_zero()) throw degenerate_input_error("concise core of the zero tensor");
  const E zero = zero_like(t.proto());
  std::array<std::size_t, 3> ranks{};
  std::vector<Matrix<E>> to, from;
  for (int d = 1; d <= 3; ++d) {
    const Matrix<E> m = flatten(t, d);
    auto rr = rref_with_transform(m);
    ranks[static_cast<std::size_t>(d - 1)] = rr.rank;
    if (rr.rank == m.rows()) {
      to.push_back(Matrix<E>::identity(m.rows(), zero));
      from.push_back(Matrix<E>::identity(m.rows(), zero));
      continue;
    }
    // transform * flattening is echelon with only the first r rows nonzero,
    // so the first r rows of the transform compress and the first r columns
    // of its inverse embed back
    Matrix<E> inv = inverse(rr.transform);
    to.push_back(rr.transform.sub(0, 0, rr.rank, m.rows()));
    from.push_back(inv.sub(0, 0, m.rows(), rr.rank));
  }
  std::array<Matrix<E>, 3> to_core{to[0], to[1], to[2]};
  std::array<Matrix<E>, 3> from_core{from[0], from[1], from[2]};
  Tensor3<E> core = apply_maps(t, to_core);
  if (apply_maps(core, from_core) != t) throw internal_error("core does not restrict back to the input");
  if (flattening_ranks(core) != ranks) throw internal_error("core is not concise");
  return ConciseCore<E>{std::move(core), std::move(to_core), std::move(from_core), ranks};
}

// ---------------------------------------------------------------------------
// Slice span maximum ranks in the three directions.

template <class E>
std::array<std::size_t, 3> slice_span_max_ranks(const Tensor3<E>& t, Rng& rng,
                                                const MaxRankOptions& opts = {}) {
  std::array<std::size_t, 3> q{};
  for (int d = 1; d <= 3; ++d) q[static_cast<std::size_t>(d - 1)] = max_rank(slice_space(t, d), rng, opts);
  return q;
}

// ---------------------------------------------------------------------------
// Generic restriction to a smaller format. The maps are the leading rows of
// random invertible matrices; the result is accepted once every direction's
// slice span maximum rank matches the generic value
//   min(q_d(t), m_e, m_f)   for {d,e,f} = {1,2,3}.

template <class E>
struct GenericRestriction {
  Tensor3<E> tensor;
  std::array<Matrix<E>, 3> maps;
  int attempts = 0;
};

template <class E>
GenericRestriction<E> generic_restrict(const Tensor3<E>& t, const std::array<std::size_t, 3>& m,
                                       Rng& rng, const MaxRankOptions& opts = {},
                                       int max_attempts = 10) {
  const auto& n = t.dims();
  for (int d = 0; d < 3; ++d)
    if (m[static_cast<std::size_t>(d)] == 0 || m[static_cast<std::size_t>(d)] > n[static_cast<std::size_t>(d)])
      throw shape_error("restriction format out of range");
  const auto q = slice_span_max_ranks(t, rng, opts);
  std::array<std::size_t, 3> target{};
  for (int d = 0; d < 3; ++d) {
    const auto e = static_cast<std::size_t>((d + 1) % 3), f = static_cast<std::size_t>((d + 2) % 3);
    target[static_cast<std::size_t>(d)] = std::min(q[static_cast<std::size_t>(d)], std::min(m[e], m[f]));
  }
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::array<Matrix<E>, 3> maps{Matrix<E>::identity(1, t.proto()),
                                  Matrix<E>::identity(1, t.proto()),
                                  Matrix<E>::identity(1, t.proto())};
    for (int d = 0; d < 3; ++d) {
      Matrix<E> r = random_invertible(n[static_cast<std::size_t>(d)], t.proto(), rng);
      maps[static_cast<std::size_t>(d)] = r.sub(0, 0, m[static_cast<std::size_t>(d)], n[static_cast<std::size_t>(d)]);
    }
    Tensor3<E> s = apply_maps(t, maps);
    if (slice_span_max_ranks(s, rng, opts) == target)
      return GenericRestriction<E>{std::move(s), std::move(maps), attempt};
  }
  throw genericity_error("generic restriction kept missing the expected slice span ranks");
}

}  // namespace sgap
