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

#include "stpbn/logical_matrix.hpp"

#include <string>
#include <utility>

namespace stpbn {

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), entries_(checked_mul(rows, cols), 0) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != checked_mul(rows, cols)) {
    throw DimensionError("dense matrix entry count does not match its shape");
  }
  for (auto e : entries_) {
    if (e < 0) {
      throw InvalidArgument("dense matrix entries must be non-negative");
    }
  }
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    out(i, i) = 1;
  }
  return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product needs a.cols == b.rows");
  }
  DenseMatrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index l = 0; l < a.cols(); ++l) {
      const auto x = a(i, l);
      if (x == 0) {
        continue;
      }
      for (Index j = 0; j < b.cols(); ++j) {
        out(i, j) += x * b(l, j);
      }
    }
  }
  return out;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(checked_mul(a.rows(), b.rows()), checked_mul(a.cols(), b.cols()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const auto x = a(i, j);
      if (x == 0) {
        continue;
      }
      for (Index p = 0; p < b.rows(); ++p) {
        for (Index q = 0; q < b.cols(); ++q) {
          out(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
        }
      }
    }
  }
  return out;
}

DenseMatrix stp(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() == 0 || b.rows() == 0) {
    throw DimensionError("semi-tensor product of an empty matrix");
  }
  const Index t = checked_lcm(a.cols(), b.rows());
  const auto left = t == a.cols() ? a : kronecker(a, DenseMatrix::identity(t / a.cols()));
  const auto right = t == b.rows() ? b : kronecker(b, DenseMatrix::identity(t / b.rows()));
  return multiply(left, right);
}

LogicalMatrix::LogicalMatrix(Index rows, std::vector<Index> delta)
    : rows_(rows), delta_(std::move(delta)) {
  if (rows_ == 0 || delta_.empty()) {
    throw DimensionError("logical matrix must have at least one row and one column");
  }
  for (std::size_t j = 0; j < delta_.size(); ++j) {
    if (delta_[j] < 1 || delta_[j] > rows_) {
      throw InvalidArgument("column " + std::to_string(j + 1) + " index " +
                            std::to_string(delta_[j]) + " outside [1, " +
                            std::to_string(rows_) + "]");
    }
  }
}

LogicalMatrix LogicalMatrix::identity(Index n) {
  std::vector<Index> delta(n);
  for (Index j = 0; j < n; ++j) {
    delta[j] = j + 1;
  }
  return LogicalMatrix(n, std::move(delta));
}

LogicalMatrix LogicalMatrix::basis(Index n, Index i) {
  return LogicalMatrix(n, std::vector<Index>{i});
}

LogicalMatrix LogicalMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<Index> delta(dense.cols());
  for (Index j = 0; j < dense.cols(); ++j) {
    Index hit = 0;
    for (Index i = 0; i < dense.rows(); ++i) {
      const auto e = dense(i, j);
      if (e == 0) {
        continue;
      }
      if (e != 1 || hit != 0) {
        throw DimensionError("column " + std::to_string(j + 1) + " is not a basis vector");
      }
      hit = i + 1;
    }
    if (hit == 0) {
      throw DimensionError("column " + std::to_string(j + 1) + " is zero");
    }
    delta[j] = hit;
  }
  return LogicalMatrix(dense.rows(), std::move(delta));
}

bool LogicalMatrix::is_permutation() const {
  if (!square()) {
    return false;
  }
  std::vector<bool> seen(rows_, false);
  for (auto i : delta_) {
    if (seen[i - 1]) {
      return false;
    }
    seen[i - 1] = true;
  }
  return true;
}

DenseMatrix LogicalMatrix::to_dense() const {
  DenseMatrix out(rows_, cols());
  for (Index j = 0; j < cols(); ++j) {
    out(delta_[j] - 1, j) = 1;
  }
  return out;
}

LogicalMatrix lm_mul(const LogicalMatrix& a, const LogicalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("lm_mul needs a.cols == b.rows (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
  std::vector<Index> delta(b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    delta[j] = a.delta()[b.delta()[j] - 1];
  }
  return LogicalMatrix(a.rows(), std::move(delta));
}

LogicalMatrix kronecker(const LogicalMatrix& a, const LogicalMatrix& b) {
  const Index rows = checked_mul(a.rows(), b.rows());
  std::vector<Index> delta(checked_mul(a.cols(), b.cols()));
  for (Index ja = 0; ja < a.cols(); ++ja) {
    for (Index jb = 0; jb < b.cols(); ++jb) {
      delta[ja * b.cols() + jb] = (a.delta()[ja] - 1) * b.rows() + b.delta()[jb];
    }
  }
  return LogicalMatrix(rows, std::move(delta));
}

LogicalMatrix khatri_rao(const LogicalMatrix& a, const LogicalMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("khatri_rao needs equal column counts (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.cols()) + ")");
  }
  const Index rows = checked_mul(a.rows(), b.rows());
  std::vector<Index> delta(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    delta[j] = (a.delta()[j] - 1) * b.rows() + b.delta()[j];
  }
  return LogicalMatrix(rows, std::move(delta));
}

LogicalMatrix swap_matrix(Index m, Index n) {
  if (m == 0 || n == 0) {
    throw DimensionError("swap matrix dimensions must be positive");
  }
  std::vector<Index> delta(checked_mul(m, n));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      delta[i * n + j] = j * m + i + 1;
    }
  }
  return LogicalMatrix(m * n, std::move(delta));
}

LogicalMatrix transpose_permutation(const LogicalMatrix& t) {
  if (!t.is_permutation()) {
    throw InvalidArgument("transpose_permutation needs a permutation matrix");
  }
  std::vector<Index> delta(t.cols());
  for (Index j = 0; j < t.cols(); ++j) {
    delta[t.delta()[j] - 1] = j + 1;
  }
  return LogicalMatrix(t.rows(), std::move(delta));
}

LogicalMatrix column_block(const LogicalMatrix& m, Index i, Index width) {
  if (width == 0 || m.cols() % width != 0) {
    throw DimensionError("column block width does not divide the column count");
  }
  if (i < 1 || i > m.cols() / width) {
    throw InvalidArgument("column block index out of range");
  }
  const auto first = m.delta().begin() + static_cast<std::ptrdiff_t>((i - 1) * width);
  return LogicalMatrix(m.rows(), std::vector<Index>(first, first + static_cast<std::ptrdiff_t>(width)));
}

}  // namespace stpbn
