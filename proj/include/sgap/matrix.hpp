#pragma once

// Dense exact matrices over any of the field element types in field.hpp.
// Rank over the rationals goes through fraction-free Bareiss elimination on a
// denominator-cleared integer matrix to control coefficient blow-up; finite
// fields use plain Gaussian elimination.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/field.hpp"
#include "sgap/rng.hpp"

namespace sgap {

template <class E>
using Vec = std::vector<E>;

template <class E>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const E& zero)
      : rows_(rows), cols_(cols), a_(rows * cols, zero) {
    if (rows == 0 || cols == 0) throw shape_error("matrix dimensions must be positive");
  }

  static Matrix identity(std::size_t n, const E& proto) {
    Matrix m(n, n, zero_like(proto));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one_like(proto);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  E& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const E& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const E& proto() const { return a_[0]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != o.a_[i]) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Matrix operator*(const E& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw shape_error("matrix product shape mismatch");
    Matrix r(rows_, o.cols_, zero_like(proto()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const E& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero_like(proto()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Vec<E> row(std::size_t i) const {
    Vec<E> v;
    v.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
  }
  Vec<E> col(std::size_t j) const {
    Vec<E> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }

  Matrix sub(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
    Matrix m(r, c, zero_like(proto()));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(r0 + i, c0 + j);
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_error("matrix shape mismatch");
  }
  std::size_t rows_, cols_;
  std::vector<E> a_;
};

template <class E>
Vec<E> mat_vec(const Matrix<E>& m, const Vec<E>& v) {
  if (v.size() != m.cols()) throw shape_error("mat_vec shape mismatch");
  Vec<E> r(m.rows(), zero_like(m.proto()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) r[i] += m.at(i, j) * v[j];
  return r;
}

template <class E>
Vec<E> vec_mat(const Vec<E>& v, const Matrix<E>& m) {
  if (v.size() != m.rows()) throw shape_error("vec_mat shape mismatch");
  Vec<E> r(m.cols(), zero_like(m.proto()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!v[i].is_zero())
      for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
  return r;
}

template <class E>
bool is_zero_vec(const Vec<E>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reduced row echelon form with an invertible transform: T * A = R.

template <class E>
struct RrefResult {
  Matrix<E> reduced;
  Matrix<E> transform;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

template <class E>
RrefResult<E> rref_with_transform(const Matrix<E>& a) {
  Matrix<E> r = a;
  Matrix<E> t = Matrix<E>::identity(a.rows(), a.proto());
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < r.cols() && pr < r.rows(); ++pc) {
    std::size_t sel = pr;
    while (sel < r.rows() && r.at(sel, pc).is_zero()) ++sel;
    if (sel == r.rows()) continue;
    if (sel != pr) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pr, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t.at(sel, j), t.at(pr, j));
    }
    const E piv_inv = r.at(pr, pc).inv();
    for (std::size_t j = 0; j < r.cols(); ++j) r.at(pr, j) *= piv_inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t.at(pr, j) *= piv_inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == pr || r.at(i, pc).is_zero()) continue;
      const E f = r.at(i, pc);
      for (std::size_t j = 0; j < r.cols(); ++j) r.at(i, j) -= f * r.at(pr, j);
      for (std::size_t j = 0; j < t.cols(); ++j) t.at(i, j) -= f * t.at(pr, j);
    }
    pivots.push_back(pc);
    ++pr;
  }
  return RrefResult<E>{std::move(r), std::move(t), std::move(pivots), pr};
}

// Plain Gaussian rank over a field.
template <class E>
std::size_t rank_gauss(Matrix<E> m) {
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
    std::size_t sel = pr;
    while (sel < m.rows() && m.at(sel, pc).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pr)
      for (std::size_t j = pc; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pr, j));
    const E piv_inv = m.at(pr, pc).inv();
    for (std::size_t i = pr + 1; i < m.rows(); ++i) {
      if (m.at(i, pc).is_zero()) continue;
      const E f = m.at(i, pc) * piv_inv;
      for (std::size_t j = pc; j < m.cols(); ++j) m.at(i, j) -= f * m.at(pr, j);
    }
    ++pr;
  }
  return pr;
}

// Fraction-free Bareiss elimination on a denominator-cleared integer matrix.
inline std::size_t rank_bareiss(const Matrix<Rat>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(m.at(i, j).value()));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& q = m.at(i, j).value();
      a[i][j] = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
    }
  }
  BigInt prev = 1;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
    std::size_t sel = pr;
    while (sel < rows && a[sel][pc] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pr) std::swap(a[sel], a[pr]);
    for (std::size_t i = pr + 1; i < rows; ++i) {
      for (std::size_t j = pc + 1; j < cols; ++j) {
        a[i][j] = (a[pr][pc] * a[i][j] - a[i][pc] * a[pr][j]) / prev;
      }
      a[i][pc] = 0;
    }
    prev = a[pr][pc];
    ++pr;
  }
  return pr;
}

template <class E>
std::size_t rank_of(const Matrix<E>& m) {
  if constexpr (std::is_same_v<E, Rat>) {
    return rank_bareiss(m);
  } else {
    return rank_gauss(m);
  }
}

template <class E>
Matrix<E> inverse(const Matrix<E>& m) {
  if (m.rows() != m.cols()) throw shape_error("inverse of non-square matrix");
  auto rr = rref_with_transform(m);
  if (rr.rank != m.rows()) throw singular_error("matrix is singular");
  return rr.transform;
}

template <class E>
bool is_invertible(const Matrix<E>& m) {
  return m.rows() == m.cols() && rank_of(m) == m.rows();
}

template <class E>
E determinant(Matrix<E> m) {
  if (m.rows() != m.cols()) throw shape_error("determinant of non-square matrix");
  E det = one_like(m.proto());
  const std::size_t n = m.rows();
  for (std::size_t pc = 0; pc < n; ++pc) {
    std::size_t sel = pc;
    while (sel < n && m.at(sel, pc).is_zero()) ++sel;
    if (sel == n) return zero_like(m.proto());
    if (sel != pc) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(pc, j));
      det = -det;
    }
    det *= m.at(pc, pc);
    const E piv_inv = m.at(pc, pc).inv();
    for (std::size_t i = pc + 1; i < n; ++i) {
      if (m.at(i, pc).is_zero()) continue;
      const E f = m.at(i, pc) * piv_inv;
      for (std::size_t j = pc; j < n; ++j) m.at(i, j) -= f * m.at(pc, j);
    }
  }
  return det;
}

// Right null space basis (each column of the result is a kernel vector).
template <class E>
std::optional<Matrix<E>> kernel_basis(const Matrix<E>& m) {
  auto rr = rref_with_transform(m);
  const std::size_t n = m.cols();
  const std::size_t dim = n - rr.rank;
  if (dim == 0) return std::nullopt;
  std::vector<bool> is_pivot(n, false);
  for (auto c : rr.pivot_cols) is_pivot[c] = true;
  Matrix<E> k(n, dim, zero_like(m.proto()));
  std::size_t idx = 0;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    k.at(fc, idx) = one_like(m.proto());
    for (std::size_t r = 0; r < rr.rank; ++r) {
      k.at(rr.pivot_cols[r], idx) = -rr.reduced.at(r, fc);
    }
    ++idx;
  }
  return k;
}

// Solve A x = b; returns a particular solution with free variables zero.
template <class E>
std::optional<Vec<E>> solve_linear(const Matrix<E>& a, const Vec<E>& b) {
  if (b.size() != a.rows()) throw shape_error("solve_linear shape mismatch");
  Matrix<E> aug(a.rows(), a.cols() + 1, zero_like(a.proto()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto rr = rref_with_transform(aug);
  for (auto c : rr.pivot_cols)
    if (c == a.cols()) return std::nullopt;  // inconsistent
  Vec<E> x(a.cols(), zero_like(a.proto()));
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
    x[rr.pivot_cols[r]] = rr.reduced.at(r, a.cols());
  }
  return x;
}

// Canonical basis of the row space: nonzero rows of the RREF.
template <class E>
Matrix<E> row_space_basis(const Matrix<E>& m) {
  auto rr = rref_with_transform(m);
  if (rr.rank == 0) throw degenerate_input_error("zero matrix has empty row space basis");
  return rr.reduced.sub(0, 0, rr.rank, m.cols());
}

// Basis of the column space, returned as columns of an m x r matrix.
template <class E>
Matrix<E> column_space_basis(const Matrix<E>& m) {
  return row_space_basis(m.transpose()).transpose();
}

// Intersection of column spans: columns of u and of v are the generators.
// Returns std::nullopt when the intersection is zero.
template <class E>
std::optional<Matrix<E>> column_space_intersection(const Matrix<E>& u, const Matrix<E>& v) {
  if (u.rows() != v.rows()) throw shape_error("span intersection shape mismatch");
  Matrix<E> cat(u.rows(), u.cols() + v.cols(), zero_like(u.proto()));
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) cat.at(i, j) = u.at(i, j);
    for (std::size_t j = 0; j < v.cols(); ++j) cat.at(i, u.cols() + j) = -v.at(i, j);
  }
  auto k = kernel_basis(cat);
  if (!k) return std::nullopt;
  // each kernel column (x, y) gives u*x in the intersection
  Matrix<E> gens(u.rows(), k->cols(), zero_like(u.proto()));
  for (std::size_t c = 0; c < k->cols(); ++c) {
    for (std::size_t i = 0; i < u.rows(); ++i) {
      E s = zero_like(u.proto());
      for (std::size_t j = 0; j < u.cols(); ++j) s += u.at(i, j) * k->at(j, c);
      gens.at(i, c) = s;
    }
  }
  if (gens.is_zero()) return std::nullopt;
  return column_space_basis(gens);
}

// ---------------------------------------------------------------------------
// Random matrices (deterministic given the Rng state).

template <class E>
Matrix<E> random_matrix(std::size_t rows, std::size_t cols, const E& proto, Rng& rng) {
  Matrix<E> m(rows, cols, zero_like(proto));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = sample_like(proto, rng);
  return m;
}

template <class E>
Matrix<E> random_invertible(std::size_t n, const E& proto, Rng& rng, int max_tries = 200) {
  for (int t = 0; t < max_tries; ++t) {
    Matrix<E> m = random_matrix(n, n, proto, rng);
    if (rank_of(m) == n) return m;
  }
  throw genericity_error("failed to sample an invertible matrix");
}

// Invertible completion: an n x n invertible matrix whose first column is v.
template <class E>
Matrix<E> complete_to_basis(const Vec<E>& v, Rng& rng, int max_tries = 200) {
  const std::size_t n = v.size();
  if (is_zero_vec(v)) throw degenerate_input_error("cannot complete zero vector to a basis");
  for (int t = 0; t < max_tries; ++t) {
    Matrix<E> m(n, n, zero_like(v[0]));
    for (std::size_t i = 0; i < n; ++i) m.at(i, 0) = v[i];
    // deterministic unit-vector completion first, random afterwards
    if (t == 0) {
      std::size_t lead = 0;
      while (lead < n && v[lead].is_zero()) ++lead;
      std::size_t c = 1;
      for (std::size_t j = 0; j < n && c < n; ++j) {
        if (j == lead) continue;
        m.at(j, c++) = one_like(v[0]);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) m.at(i, j) = sample_like(v[0], rng);
    }
    if (rank_of(m) == n) return m;
  }
  throw genericity_error("failed to complete vector to an invertible matrix");
}

}  // namespace sgap
