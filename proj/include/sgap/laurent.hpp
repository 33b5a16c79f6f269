#pragma once

// Sparse Laurent polynomials in one formal variable over an exact field, and
// matrices of them. These drive degenerations: applying a triple of Laurent
// matrices to a tensor produces an expansion collected by exponent, and the
// expansions appearing here have only a handful of terms.

#include <cstdint>
#include <map>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/field.hpp"
#include "sgap/matrix.hpp"
#include "sgap/tensor.hpp"

namespace sgap {

namespace detail {

template <class E>
E eval_power(const E& x, std::int64_t e) {
  E base = x;
  std::int64_t n = e;
  if (n < 0) {
    base = x.inv();
    n = -n;
  }
  E out = one_like(x);
  for (std::int64_t i = 0; i < n; ++i) out = out * base;
  return out;
}

}  // namespace detail

template <class E>
struct LaurentPoly {
  std::map<std::int64_t, E> terms;  // exponent -> nonzero coefficient

  static LaurentPoly monomial(std::int64_t e, const E& v) {
    LaurentPoly p;
    if (!v.is_zero()) p.terms.emplace(e, v);
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(std::int64_t e, const E& v) {
    if (v.is_zero()) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) terms.erase(it);
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, v] : o.terms) r.add_term(e, v);
    return r;
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, v1] : terms)
      for (const auto& [e2, v2] : o.terms) r.add_term(e1 + e2, v1 * v2);
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return terms == o.terms; }

  std::int64_t min_exponent() const {
    if (terms.empty()) throw degenerate_input_error("zero polynomial has no exponents");
    return terms.begin()->first;
  }
  std::int64_t max_exponent() const {
    if (terms.empty()) throw degenerate_input_error("zero polynomial has no exponents");
    return terms.rbegin()->first;
  }

  E evaluate(const E& x) const {
    E out = zero_like(x);
    for (const auto& [e, v] : terms) out += v * detail::eval_power(x, e);
    return out;
  }
};

template <class E>
class LaurentMatrix {
 public:
  LaurentMatrix(std::size_t rows, std::size_t cols, const E& proto)
      : rows_(rows), cols_(cols), proto_(zero_like(proto)), a_(rows * cols) {
    if (rows == 0 || cols == 0) throw shape_error("matrix dimensions must be positive");
  }

  static LaurentMatrix from_scalar(const Matrix<E>& m) {
    LaurentMatrix r(m.rows(), m.cols(), zero_like(m.proto()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        r.at(i, j) = LaurentPoly<E>::monomial(0, m.at(i, j));
    return r;
  }

  // diag(eps^{exps[0]}, ..., eps^{exps[n-1]})
  static LaurentMatrix diagonal_powers(const std::vector<std::int64_t>& exps, const E& proto) {
    LaurentMatrix r(exps.size(), exps.size(), proto);
    for (std::size_t i = 0; i < exps.size(); ++i)
      r.at(i, i) = LaurentPoly<E>::monomial(exps[i], one_like(proto));
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const E& proto() const { return proto_; }
  LaurentPoly<E>& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const LaurentPoly<E>& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  LaurentMatrix operator*(const LaurentMatrix& o) const {
    if (cols_ != o.rows_) throw shape_error("matrix product shape mismatch");
    LaurentMatrix r(rows_, o.cols_, proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    return r;
  }

  Matrix<E> evaluate(const E& x) const {
    Matrix<E> m(rows_, cols_, proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).evaluate(x);
    return m;
  }

 private:
  std::size_t rows_, cols_;
  E proto_;
  std::vector<LaurentPoly<E>> a_;
};

// Exact multilinear action of a Laurent matrix triple, collected by exponent.
// Only finitely many exponents carry a nonzero tensor.
template <class E>
std::map<std::int64_t, Tensor3<E>> apply_laurent(const Tensor3<E>& t, const LaurentMatrix<E>& a,
                                                 const LaurentMatrix<E>& b,
                                                 const LaurentMatrix<E>& c) {
  if (a.cols() != t.dim(0) || b.cols() != t.dim(1) || c.cols() != t.dim(2))
    throw shape_error("laurent maps do not match tensor dimensions");
  std::map<std::int64_t, Tensor3<E>> out;
  const E proto = zero_like(t.proto());
  auto slot = [&](std::int64_t e) -> Tensor3<E>& {
    auto it = out.find(e);
    if (it == out.end())
      it = out.emplace(e, Tensor3<E>(a.rows(), b.rows(), c.rows(), proto)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j)
      for (std::size_t k = 0; k < t.dim(2); ++k) {
        const E& v = t.at(i, j, k);
        if (v.is_zero()) continue;
        for (std::size_t i2 = 0; i2 < a.rows(); ++i2) {
          if (a.at(i2, i).is_zero()) continue;
          for (std::size_t j2 = 0; j2 < b.rows(); ++j2) {
            if (b.at(j2, j).is_zero()) continue;
            for (std::size_t k2 = 0; k2 < c.rows(); ++k2) {
              if (c.at(k2, k).is_zero()) continue;
              for (const auto& [e1, c1] : a.at(i2, i).terms)
                for (const auto& [e2, c2] : b.at(j2, j).terms)
                  for (const auto& [e3, c3] : c.at(k2, k).terms)
                    slot(e1 + e2 + e3).at(i2, j2, k2) += v * c1 * c2 * c3;
            }
          }
        }
      }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace sgap
