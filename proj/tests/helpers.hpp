#pragma once

// Shared construction helpers for the test suites.

#include <initializer_list>

#include "sgap/field.hpp"
#include "sgap/matrix.hpp"
#include "sgap/tensor.hpp"

namespace sgap::testing {

struct Entry {
  std::size_t i, j, k;
  std::int64_t v;
};

template <class E>
Tensor3<E> make_tensor(std::size_t n1, std::size_t n2, std::size_t n3, const E& proto,
                       std::initializer_list<Entry> entries) {
  Tensor3<E> t(n1, n2, n3, zero_like(proto));
  for (const auto& e : entries) t.at(e.i, e.j, e.k) = from_int_like(proto, e.v);
  return t;
}

template <class E>
Matrix<E> make_matrix(std::size_t r, std::size_t c, const E& proto,
                      std::initializer_list<std::int64_t> v) {
  Matrix<E> m(r, c, zero_like(proto));
  auto it = v.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = from_int_like(proto, *it++);
  return m;
}

}  // namespace sgap::testing
