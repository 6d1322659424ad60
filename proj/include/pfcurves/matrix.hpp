/*
 * Copyright 2026 The pfcurves Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pfcurves/rational.hpp"

namespace pfcurves {

/// Dense row-major matrix over Q.
class MatQ {
 public:
  MatQ() = default;

  MatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  MatQ(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw std::invalid_argument("MatQ: entry count does not match shape");
  }

  static MatQ identity(std::size_t n) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Every row must have the same length; an empty list gives the 0x0 matrix.
  static MatQ from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    const std::size_t c = rows.front().size();
    MatQ m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("MatQ: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(i * c));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<Rat>& entries() const { return entries_; }

  std::span<const Rat> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  Vec row_vec(std::size_t i) const { return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                             entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)}; }

  Vec col_vec(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  std::vector<Vec> to_rows() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vec(i));
    return out;
  }

  MatQ transpose() const {
    MatQ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rat& x) { return x == 0; });
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, i) != 0) return false;
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
    return true;
  }

  friend MatQ operator*(const MatQ& a, const MatQ& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("MatQ: product shape mismatch");
    MatQ c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec operator*(const MatQ& a, const Vec& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("MatQ: matrix-vector shape mismatch");
    Vec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const MatQ& a, const MatQ& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Square matrix with a_ij = -a_ji and zero diagonal; the setter keeps
/// both halves in sync so the invariant cannot be broken after construction.
class SkewMatQ {
 public:
  SkewMatQ() = default;

  explicit SkewMatQ(std::size_t n) : m_(n, n) {}

  /// Throws std::invalid_argument unless `m` is skew-symmetric.
  explicit SkewMatQ(MatQ m) : m_(std::move(m)) {
    if (!m_.is_skew()) throw std::invalid_argument("matrix is not skew-symmetric");
  }

  /// Builds from the strict upper triangle listed row by row:
  /// (a01, a02, ..., a0n, a12, ...).
  static SkewMatQ from_upper(std::size_t n, const std::vector<Rat>& upper) {
    if (upper.size() != n * (n - (n > 0 ? 1 : 0)) / 2) throw std::invalid_argument("SkewMatQ: wrong number of upper entries");
    SkewMatQ a(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, upper[k++]);
    return a;
  }

  std::size_t size() const { return m_.rows(); }

  const Rat& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  void set(std::size_t i, std::size_t j, const Rat& value) {
    if (i == j) {
      if (value != 0) throw std::invalid_argument("skew matrix diagonal must be zero");
      return;
    }
    m_(i, j) = value;
    m_(j, i) = -value;
  }

  const MatQ& matrix() const { return m_; }

  /// Principal submatrix on the listed indices, in the given order.
  SkewMatQ principal(std::span<const std::size_t> keep) const {
    SkewMatQ out(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b) {
        out.m_(a, b) = m_(keep[a], keep[b]);
        out.m_(b, a) = m_(keep[b], keep[a]);
      }
    return out;
  }

  friend bool operator==(const SkewMatQ& a, const SkewMatQ& b) { return a.m_ == b.m_; }

 private:
  MatQ m_;
};

namespace detail {

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(MatQ& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Rank over Q by exact Gaussian elimination.
inline std::size_t rank(const MatQ& m) {
  MatQ work = m;
  return detail::rref(work).size();
}

/// Basis of the right kernel {v : M v = 0}; one vector per free column,
/// with a 1 in that column.
inline std::vector<Vec> kernel_basis(const MatQ& m) {
  MatQ work = m;
  const auto pivots = detail::rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant by exact elimination (0x0 gives 1).
inline Rat determinant(const MatQ& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  MatQ work = m;
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && work(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work(p, j), work(c, j));
      det = -det;
    }
    det *= work(c, c);
    const Rat inv = 1 / work(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (work(i, c) == 0) continue;
      const Rat f = work(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) work(i, j) -= f * work(c, j);
    }
  }
  return det;
}

/// Matrix whose rows are the given vectors.
inline MatQ stack_rows(const std::vector<Vec>& vs, std::size_t width) {
  MatQ m(vs.size(), width);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != width) throw std::invalid_argument("stack_rows: length mismatch");
    for (std::size_t j = 0; j < width; ++j) m(i, j) = vs[i][j];
  }
  return m;
}

/// True iff the two families span the same subspace of Q^width.
inline bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t width) {
  const std::size_t ra = rank(stack_rows(a, width));
  const std::size_t rb = rank(stack_rows(b, width));
  if (ra != rb) return false;
  std::vector<Vec> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank(stack_rows(both, width)) == ra;
}

/// Greedy selection of a linearly independent subfamily spanning the same space.
inline std::vector<Vec> independent_subset(const std::vector<Vec>& vs, std::size_t width) {
  std::vector<Vec> chosen;
  std::size_t r = 0;
  for (const auto& v : vs) {
    chosen.push_back(v);
    const std::size_t nr = rank(stack_rows(chosen, width));
    if (nr == r) {
      chosen.pop_back();
    } else {
      r = nr;
    }
  }
  return chosen;
}

}  // namespace pfcurves
