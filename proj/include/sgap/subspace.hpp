#pragma once

// Classification of matrix subspaces of maximum rank at most two, up to
// simultaneous invertible row and column operations and removal of zero rows
// and columns. The possible classes are: supported in a single row or column,
// supported in two rows or two columns, supported in one row plus one column,
// or equivalent to the space of 3x3 alternating matrices. Every verdict except
// RankAtLeast3 carries a pair of invertible matrices moving the space into its
// canonical support pattern, and the certificate is re-verified entry by entry
// before it is returned.
//
// When several patterns fit, the most specific one wins, in the order
// SingleRow, SingleColumn, TwoRows, TwoColumns, RowPlusColumn, Skew3x3.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sgap/errors.hpp"
#include "sgap/field.hpp"
#include "sgap/matrix.hpp"
#include "sgap/matrix_space.hpp"
#include "sgap/rng.hpp"

namespace sgap {

enum class SubspaceTag {
  SingleRow,
  SingleColumn,
  TwoRows,
  TwoColumns,
  RowPlusColumn,
  Skew3x3,
  RankAtLeast3,
};

inline const char* subspace_tag_name(SubspaceTag t) {
  switch (t) {
    case SubspaceTag::SingleRow: return "single-row";
    case SubspaceTag::SingleColumn: return "single-column";
    case SubspaceTag::TwoRows: return "two-rows";
    case SubspaceTag::TwoColumns: return "two-columns";
    case SubspaceTag::RowPlusColumn: return "row-plus-column";
    case SubspaceTag::Skew3x3: return "skew-3x3";
    case SubspaceTag::RankAtLeast3: return "rank-at-least-3";
  }
  return "unknown";
}

template <class E>
struct SubspaceTransform {
  Matrix<E> row_ops;  // applied on the left
  Matrix<E> col_ops;  // applied on the right
};

template <class E>
struct SubspaceClass {
  SubspaceTag tag = SubspaceTag::RankAtLeast3;
  std::optional<SubspaceTransform<E>> transform;
  std::size_t max_rank = 0;
};

// Whether the canonical pattern for a tag allows a nonzero entry at (i, j).
inline bool pattern_allows(SubspaceTag tag, std::size_t i, std::size_t j) {
  switch (tag) {
    case SubspaceTag::SingleRow: return i == 0;
    case SubspaceTag::SingleColumn: return j == 0;
    case SubspaceTag::TwoRows: return i < 2;
    case SubspaceTag::TwoColumns: return j < 2;
    case SubspaceTag::RowPlusColumn: return i == 0 || j == 0;
    case SubspaceTag::Skew3x3: return i < 3 && j < 3 && i != j;
    case SubspaceTag::RankAtLeast3: return true;
  }
  return true;
}

// Alternating means zero diagonal and m[j][i] = -m[i][j]; over characteristic
// two this reads as symmetric with zero diagonal, which is the right notion.
template <class E>
bool is_alternating_leading_3x3(const Matrix<E>& m) {
  if (m.rows() < 3 || m.cols() < 3) return false;
  for (std::size_t i = 0; i < 3; ++i)
    if (!m.at(i, i).is_zero()) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (!(m.at(j, i) == (zero_like(m.proto()) - m.at(i, j)))) return false;
  return true;
}

template <class E>
bool verify_subspace_class(const MatrixSpace<E>& s, const SubspaceClass<E>& cls) {
  if (cls.tag == SubspaceTag::RankAtLeast3) return !cls.transform.has_value();
  if (!cls.transform.has_value()) return false;
  const Matrix<E>& r = cls.transform->row_ops;
  const Matrix<E>& c = cls.transform->col_ops;
  if (r.rows() != s.ambient_rows() || c.cols() != s.ambient_cols()) return false;
  if (!is_invertible(r) || !is_invertible(c)) return false;
  std::vector<Matrix<E>> moved;
  moved.reserve(s.dim());
  for (const auto& b : s.basis()) {
    Matrix<E> m = r * b * c;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!pattern_allows(cls.tag, i, j) && !m.at(i, j).is_zero()) return false;
    if (cls.tag == SubspaceTag::Skew3x3 && !is_alternating_leading_3x3(m)) return false;
    moved.push_back(std::move(m));
  }
  if (cls.tag == SubspaceTag::Skew3x3) {
    // the transformed space must fill the whole three-dimensional alternating
    // space, not just sit inside it
    Matrix<E> coords(moved.size(), 3, s.proto());
    for (std::size_t b = 0; b < moved.size(); ++b) {
      coords.at(b, 0) = moved[b].at(0, 1);
      coords.at(b, 1) = moved[b].at(0, 2);
      coords.at(b, 2) = moved[b].at(1, 2);
    }
    if (rank_of(coords) != 3) return false;
  }
  return true;
}

namespace detail {

// Greedily append unit columns to a full-column-rank matrix until square.
template <class E>
Matrix<E> extend_columns_to_invertible(const Matrix<E>& m) {
  const std::size_t n = m.rows();
  if (m.cols() > n || rank_of(m) != m.cols()) throw internal_error("extension base not independent");
  Matrix<E> acc = m;
  for (std::size_t u = 0; u < n && acc.cols() < n; ++u) {
    Matrix<E> cand(n, acc.cols() + 1, zero_like(acc.proto()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j) cand.at(i, j) = acc.at(i, j);
    cand.at(u, acc.cols()) = one_like(acc.proto());
    if (rank_of(cand) == cand.cols()) acc = std::move(cand);
  }
  if (acc.cols() != n) throw internal_error("could not complete columns to a basis");
  return acc;
}

// Block-diagonal extension of a k x k matrix to n x n with an identity tail.
template <class E>
Matrix<E> embed_leading_block(const Matrix<E>& block, std::size_t n) {
  Matrix<E> m = Matrix<E>::identity(n, block.proto());
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) m.at(i, j) = block.at(i, j);
  return m;
}

// Invertible row and column operations concentrating every generator into the
// leading u x v block, where u and v are the dimensions of the joint column
// and row spaces. This also strips zero rows and columns, which never affect
// the class.
template <class E>
struct AmbientCompression {
  Matrix<E> row_ops;
  Matrix<E> col_ops;
  std::size_t u = 0;
  std::size_t v = 0;
  std::vector<Matrix<E>> blocks;
};

template <class E>
AmbientCompression<E> compress_ambient(const MatrixSpace<E>& s) {
  const std::size_t rows = s.ambient_rows();
  const std::size_t cols = s.ambient_cols();
  const E proto = s.proto();
  Matrix<E> hstack(rows, cols * s.dim(), proto);
  Matrix<E> vstack(rows * s.dim(), cols, proto);
  for (std::size_t b = 0; b < s.dim(); ++b)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        hstack.at(i, b * cols + j) = s.basis()[b].at(i, j);
        vstack.at(b * rows + i, j) = s.basis()[b].at(i, j);
      }
  Matrix<E> ucols = column_space_basis(hstack);
  Matrix<E> vrows = row_space_basis(vstack);
  AmbientCompression<E> out{Matrix<E>::identity(rows, proto), Matrix<E>::identity(cols, proto), 0,
                            0, {}};
  out.u = ucols.cols();
  out.v = vrows.rows();
  out.row_ops = inverse(extend_columns_to_invertible(ucols));
  out.col_ops = inverse(extend_columns_to_invertible(vrows.transpose())).transpose();
  for (const auto& b : s.basis()) {
    Matrix<E> full = out.row_ops * b * out.col_ops;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if ((i >= out.u || j >= out.v) && !full.at(i, j).is_zero())
          throw internal_error("ambient compression left mass outside the joint block");
    out.blocks.push_back(full.sub(0, 0, out.u, out.v));
  }
  return out;
}

// Support-pattern test for the row-plus-column class: with x spanning the
// common column line and w the common row covector line, every generator must
// map the hyperplane w-perp into the line spanned by x.
template <class E>
bool row_plus_column_holds(const std::vector<Matrix<E>>& blocks, const Vec<E>& x,
                           const Vec<E>& w) {
  const std::size_t u = blocks.front().rows();
  const std::size_t v = blocks.front().cols();
  Matrix<E> xm(u, 1, zero_like(x[0]));
  for (std::size_t i = 0; i < u; ++i) xm.at(i, 0) = x[i];
  if (rank_of(xm) != 1) return false;
  Matrix<E> p = inverse(extend_columns_to_invertible(xm)).sub(1, 0, u - 1, u);
  Matrix<E> wm(1, v, zero_like(w[0]));
  for (std::size_t j = 0; j < v; ++j) wm.at(0, j) = w[j];
  auto q = kernel_basis(wm);
  if (!q.has_value()) return false;
  for (const auto& b : blocks)
    if (!(p * b * *q).is_zero()) return false;
  return true;
}

template <class E>
Vec<E> normalize_line(Vec<E> x) {
  for (const auto& e : x)
    if (!e.is_zero()) {
      const E inv = e.inv();
      for (auto& y : x) y = y * inv;
      return x;
    }
  return x;
}

template <class E>
void push_line_candidate(std::vector<Vec<E>>& out, Vec<E> x) {
  x = normalize_line(std::move(x));
  for (const auto& o : out)
    if (o == x) return;
  out.push_back(std::move(x));
}

// All lines of K^n for a finite field, as representatives whose first nonzero
// coordinate is one.
template <class E>
std::vector<Vec<E>> projective_lines(std::size_t n, const E& proto, std::uint64_t q) {
  std::vector<Vec<E>> out;
  for (std::size_t pivot = 0; pivot < n; ++pivot) {
    const std::size_t free = n - 1 - pivot;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      Vec<E> x(n, zero_like(proto));
      x[pivot] = one_like(proto);
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < free; ++i) {
        x[pivot + 1 + i] = element_at_like(proto, rest % q);
        rest /= q;
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

template <class E>
Matrix<E> random_combination(const std::vector<Matrix<E>>& blocks, Rng& rng) {
  Matrix<E> m(blocks.front().rows(), blocks.front().cols(), zero_like(blocks.front().proto()));
  for (const auto& b : blocks) m = m + b * sample_like(m.proto(), rng);
  return m;
}

// Search for the common column line x and common row line w of a
// row-plus-column space. Generic rank-two elements have column spaces
// span{x, c} whose pairwise intersections recover x, and dually for w; over a
// tiny field the candidate lines are enumerated outright instead.
template <class E>
std::optional<std::pair<Vec<E>, Vec<E>>> find_row_plus_column_lines(
    const std::vector<Matrix<E>>& blocks, Rng& rng) {
  const std::size_t u = blocks.front().rows();
  const std::size_t v = blocks.front().cols();
  const E proto = zero_like(blocks.front().proto());
  std::vector<Vec<E>> xs, ws;
  for (int attempt = 0; attempt < 80 && (xs.size() < 5 || ws.size() < 5); ++attempt) {
    Matrix<E> a = random_combination(blocks, rng);
    Matrix<E> b = random_combination(blocks, rng);
    if (rank_of(a) != 2 || rank_of(b) != 2) continue;
    if (auto xi = column_space_intersection(a, b); xi.has_value() && xi->cols() == 1)
      push_line_candidate(xs, xi->col(0));
    if (auto wi = column_space_intersection(a.transpose(), b.transpose());
        wi.has_value() && wi->cols() == 1)
      push_line_candidate(ws, wi->col(0));
  }
  for (const auto& x : xs)
    for (const auto& w : ws)
      if (row_plus_column_holds(blocks, x, w)) return std::make_pair(x, w);
  const std::uint64_t q = field_size_like(proto);
  if (q == 0 || q >= kGenericFieldSize) return std::nullopt;  // sampling is reliable here
  if (u > 8 || v > 8)
    throw small_field_error("row-plus-column search space too large over this small field");
  auto count_lines = [&](std::size_t n) {
    std::uint64_t total = 0, power = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total += power;
      power *= q;
    }
    return total;
  };
  if (count_lines(u) * count_lines(v) > 200000)
    throw small_field_error("row-plus-column search space too large over this small field");
  for (const auto& x : projective_lines(u, proto, q))
    for (const auto& w : projective_lines(v, proto, q))
      if (row_plus_column_holds(blocks, x, w)) return std::make_pair(x, w);
  return std::nullopt;
}

// Recognize the full 3x3 alternating space. Each nonzero element of the model
// space has a one-dimensional right and left kernel, and matching the kernels
// of a basis against the kernel of the basis sum recovers the change of basis
// on both sides at once: with V = [v1 v2 v3] the identity
// V^T [v]_x V = det(V) [V^{-1} v]_x turns the recovered frames into exactly
// the standard cross-product matrices.
template <class E>
std::optional<SubspaceTransform<E>> recognize_skew_3x3(const std::vector<Matrix<E>>& blocks) {
  if (blocks.size() != 3) return std::nullopt;
  const E proto = zero_like(blocks.front().proto());
  std::vector<Matrix<E>> four = blocks;
  four.push_back(blocks[0] + blocks[1] + blocks[2]);
  std::vector<Vec<E>> right, left;
  for (const auto& b : four) {
    if (b.rows() != 3 || b.cols() != 3 || rank_of(b) != 2) return std::nullopt;
    auto rk = kernel_basis(b);
    auto lk = kernel_basis(b.transpose());
    if (!rk.has_value() || rk->cols() != 1 || !lk.has_value() || lk->cols() != 1)
      return std::nullopt;
    right.push_back(rk->col(0));
    left.push_back(lk->col(0));
  }
  auto frame = [&](const std::vector<Vec<E>>& k) -> std::optional<Matrix<E>> {
    Matrix<E> m(3, 3, proto);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) m.at(i, j) = k[j][i];
    auto alpha = solve_linear(m, k[3]);
    if (!alpha.has_value()) return std::nullopt;
    for (const auto& a : *alpha)
      if (a.is_zero()) return std::nullopt;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) m.at(i, j) = m.at(i, j) * (*alpha)[j];
    if (!is_invertible(m)) return std::nullopt;
    return m;
  };
  auto qhat = frame(right);
  auto phat = frame(left);
  if (!qhat.has_value() || !phat.has_value()) return std::nullopt;
  SubspaceTransform<E> t{phat->transpose(), *qhat};
  for (const auto& b : blocks)
    if (!is_alternating_leading_3x3(t.row_ops * b * t.col_ops)) return std::nullopt;
  return t;
}

}  // namespace detail

// Decide the equivalence class of a matrix space whose maximum rank is at most
// two, or report RankAtLeast3. The returned transforms always live over the
// base field; field lifting is only used inside the maximum-rank computation.
template <class E>
SubspaceClass<E> classify_subspace(const MatrixSpace<E>& s, Rng& rng,
                                   const MaxRankOptions& opts = {}) {
  if (s.dim() == 0) throw degenerate_input_error("cannot classify an empty matrix space");
  SubspaceClass<E> out;
  out.max_rank = max_rank(s, rng, opts);
  if (out.max_rank >= 3) {
    out.tag = SubspaceTag::RankAtLeast3;
    return out;
  }
  auto comp = detail::compress_ambient(s);
  const std::size_t rows = s.ambient_rows();
  const std::size_t cols = s.ambient_cols();
  auto finish = [&](SubspaceTag tag, const Matrix<E>& rb, const Matrix<E>& cb) {
    out.tag = tag;
    out.transform = SubspaceTransform<E>{detail::embed_leading_block(rb, rows) * comp.row_ops,
                                         comp.col_ops * detail::embed_leading_block(cb, cols)};
    if (!verify_subspace_class(s, out))
      throw internal_error("subspace certificate failed re-verification");
    return out;
  };
  const Matrix<E> idu = Matrix<E>::identity(comp.u, s.proto());
  const Matrix<E> idv = Matrix<E>::identity(comp.v, s.proto());
  if (out.max_rank == 1) {
    if (comp.u == 1) return finish(SubspaceTag::SingleRow, idu, idv);
    if (comp.v == 1) return finish(SubspaceTag::SingleColumn, idu, idv);
    throw internal_error("rank-one space with joint spaces beyond one dimension");
  }
  if (comp.u <= 2) return finish(SubspaceTag::TwoRows, idu, idv);
  if (comp.v <= 2) return finish(SubspaceTag::TwoColumns, idu, idv);
  if (auto lines = detail::find_row_plus_column_lines(comp.blocks, rng); lines.has_value()) {
    Matrix<E> xm(comp.u, 1, s.proto());
    for (std::size_t i = 0; i < comp.u; ++i) xm.at(i, 0) = lines->first[i];
    Matrix<E> rb = inverse(detail::extend_columns_to_invertible(xm));
    Matrix<E> wm(1, comp.v, s.proto());
    for (std::size_t j = 0; j < comp.v; ++j) wm.at(0, j) = lines->second[j];
    Matrix<E> wker = *kernel_basis(wm);
    Matrix<E> padded = detail::extend_columns_to_invertible(wker);
    Matrix<E> cb(comp.v, comp.v, s.proto());
    for (std::size_t i = 0; i < comp.v; ++i) {
      cb.at(i, 0) = padded.at(i, comp.v - 1);
      for (std::size_t j = 0; j + 1 < comp.v; ++j) cb.at(i, j + 1) = wker.at(i, j);
    }
    return finish(SubspaceTag::RowPlusColumn, rb, cb);
  }
  if (comp.u == 3 && comp.v == 3) {
    if (auto t = detail::recognize_skew_3x3(comp.blocks); t.has_value())
      return finish(SubspaceTag::Skew3x3, t->row_ops, t->col_ops);
  }
  const std::uint64_t q = field_size_like(s.proto());
  if (!opts.field_lift && q != 0 && q < kGenericFieldSize)
    throw small_field_error(
        "rank-two classification is undecided over this small field; enable field lifting");
  throw internal_error("matrix space escapes the rank-two classification");
}

}  // namespace sgap
