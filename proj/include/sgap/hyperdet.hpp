#pragma once

// Hyperdeterminant of a 2 x 2 x 2 tensor. It vanishes exactly on the closure
// of the orbit of degenerate pencils; under the action of a matrix triple it
// picks up the squared product of the determinants, which the tests exercise.

#include "sgap/errors.hpp"
#include "sgap/tensor.hpp"

namespace sgap {

template <class E>
E hyperdeterminant_2x2x2(const Tensor3<E>& t) {
  if (t.dims() != std::array<std::size_t, 3>{2, 2, 2})
    throw shape_error("hyperdeterminant needs a 2 x 2 x 2 tensor");
  const E& a000 = t.at(0, 0, 0);
  const E& a001 = t.at(0, 0, 1);
  const E& a010 = t.at(0, 1, 0);
  const E& a011 = t.at(0, 1, 1);
  const E& a100 = t.at(1, 0, 0);
  const E& a101 = t.at(1, 0, 1);
  const E& a110 = t.at(1, 1, 0);
  const E& a111 = t.at(1, 1, 1);
  const E two = from_int_like(t.proto(), 2);
  const E four = from_int_like(t.proto(), 4);
  E sq = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
         a010 * a010 * a101 * a101 + a011 * a011 * a100 * a100;
  E cross = a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 +
            a000 * a011 * a100 * a111 + a001 * a010 * a101 * a110 +
            a001 * a011 * a110 * a100 + a010 * a011 * a101 * a100;
  E circ = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
  return sq - two * cross + four * circ;
}

}  // namespace sgap
