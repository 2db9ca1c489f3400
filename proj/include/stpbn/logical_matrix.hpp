/*
 * Copyright 2026 The stpbn Authors
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

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "stpbn/arith.hpp"

namespace stpbn {

/// Dense non-negative integer matrix, row-major. Only used where the
/// semi-tensor product needs operands that are not logical matrices, and as
/// a test oracle for the condensed kernels.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);
  DenseMatrix(Index rows, Index cols, std::vector<std::int64_t> entries);

  static DenseMatrix identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  std::int64_t& operator()(Index r, Index c) { return entries_[r * cols_ + c]; }
  std::int64_t operator()(Index r, Index c) const { return entries_[r * cols_ + c]; }

  std::span<const std::int64_t> entries() const noexcept { return entries_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::int64_t> entries_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

/// Left semi-tensor product: (A ⊗ I_{t/n})(B ⊗ I_{t/p}) with t = lcm(n, p).
DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b);

/// A matrix whose every column is a canonical basis vector, kept in
/// condensed form δ_rows[i_1, ..., i_cols]. Entries are 1-based row indices.
class LogicalMatrix {
 public:
  LogicalMatrix() = default;
  LogicalMatrix(Index rows, std::vector<Index> delta);
  LogicalMatrix(Index rows, std::initializer_list<Index> delta)
      : LogicalMatrix(rows, std::vector<Index>(delta)) {}

  static LogicalMatrix identity(Index n);
  /// The basis column δ_n^i as an n×1 logical matrix.
  static LogicalMatrix basis(Index n, Index i);
  /// Throws DimensionError if `dense` is not logical.
  static LogicalMatrix from_dense(const DenseMatrix& dense);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return delta_.size(); }
  bool square() const noexcept { return rows_ == cols(); }

  /// Image of 1-based column `j`, a 1-based row index.
  Index image(Index j) const { return delta_[j - 1]; }

  std::span<const Index> delta() const noexcept { return delta_; }

  bool is_permutation() const;
  DenseMatrix to_dense() const;

  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

 private:
  Index rows_ = 0;
  std::vector<Index> delta_;
};

/// Ordinary product of logical matrices: (ab)(j) = a(b(j)).
LogicalMatrix lm_mul(const LogicalMatrix& a, const LogicalMatrix& b);

LogicalMatrix kronecker(const LogicalMatrix& a, const LogicalMatrix& b);

/// Column-wise Kronecker product; requires equal column counts.
LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b);

/// Swap matrix W_[m,n]: W (u ⊗ v) = v ⊗ u for u ∈ Δ_m, v ∈ Δ_n.
LogicalMatrix swap_matrix(Index m, Index n);

/// Transpose of a permutation matrix, i.e. its inverse.
LogicalMatrix transpose_permutation(const LogicalMatrix& t);

/// Columns [(i-1)·width + 1, i·width] of `m`, i.e. m·(δ_{cols/width}^i ⊗ I_width).
LogicalMatrix column_block(const LogicalMatrix& m, Index i, Index width);

}  // namespace stpbn
