#pragma once

// The named tensors the tool ships with: diagonal (unit) tensors, the W state
// tensor, the alternating tensor on three generators, and the null algebra
// tensors in their three orientations.

#include <array>
#include <cstddef>

#include "sgap/errors.hpp"
#include "sgap/tensor.hpp"

namespace sgap::corpus {

template <class E>
Tensor3<E> diagonal(std::size_t r, const E& proto) {
  if (r == 0) throw shape_error("diagonal tensor needs positive size");
  Tensor3<E> t(r, r, r, zero_like(proto));
  for (std::size_t i = 0; i < r; ++i) t.at(i, i, i) = one_like(proto);
  return t;
}

// e1 e1 e2 + e1 e2 e1 + e2 e1 e1
template <class E>
Tensor3<E> w_state(const E& proto) {
  Tensor3<E> t(2, 2, 2, zero_like(proto));
  t.at(0, 0, 1) = one_like(proto);
  t.at(0, 1, 0) = one_like(proto);
  t.at(1, 0, 0) = one_like(proto);
  return t;
}

// e1 ^ e2 ^ e3: entry at a permutation (i,j,k) of (1,2,3) is its sign.
template <class E>
Tensor3<E> alternating(const E& proto) {
  Tensor3<E> t(3, 3, 3, zero_like(proto));
  const E one = one_like(proto);
  t.at(0, 1, 2) = one;
  t.at(1, 2, 0) = one;
  t.at(2, 0, 1) = one;
  t.at(0, 2, 1) = -one;
  t.at(2, 1, 0) = -one;
  t.at(1, 0, 2) = -one;
  return t;
}

// Null algebra tensor of size n with the distinguished factor in the given
// direction. For direction 3 the entries are
//   e1 e1 e1 + sum over i >= 2 of (e1 ei ei + ei e1 ei),
// and the other directions are the cyclic relabelings of that.
template <class E>
Tensor3<E> null_algebra(std::size_t n, int direction, const E& proto) {
  if (n < 2) throw shape_error("null algebra tensor needs size at least 2");
  if (direction < 1 || direction > 3) throw shape_error("direction must be 1, 2 or 3");
  Tensor3<E> t(n, n, n, zero_like(proto));
  const E one = one_like(proto);
  t.at(0, 0, 0) = one;
  for (std::size_t i = 1; i < n; ++i) {
    t.at(0, i, i) = one;
    t.at(i, 0, i) = one;
  }
  if (direction == 3) return t;
  if (direction == 1) return permute_factors(t, std::array<int, 3>{1, 2, 0});
  return permute_factors(t, std::array<int, 3>{2, 0, 1});
}

}  // namespace sgap::corpus
