// Copyright 2026 The qnls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "qnls/types.hpp"

namespace qnls {

/// One stored coefficient of a SparseMatrix.
struct Entry {
  Index row;
  Index col;
  double value;

  bool operator==(const Entry&) const = default;
};

/// Immutable coordinate-format real matrix with entries sorted row-major.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Validates indices and rejects duplicate (row, col) pairs.
  SparseMatrix(Index rows, Index cols, std::vector<Entry> entries);

  /// Sums duplicates and drops exact zeros.
  static SparseMatrix accumulate(Index rows, Index cols, const std::vector<Entry>& entries);
  static SparseMatrix from_dense(const Matrix& dense);
  static SparseMatrix identity(Index n, double scale = 1.0);
  static SparseMatrix zero(Index rows, Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  Index nnz() const { return static_cast<Index>(entries_.size()); }
  bool square() const { return rows_ == cols_; }

  Index max_row_nnz() const;
  Index max_col_nnz() const;
  /// Larger of the row and column nonzero maxima.
  Index sparsity() const;
  double max_abs() const;

  Matrix to_dense() const;
  Vector multiply(const Vector& x) const;
  SparseMatrix transposed() const;
  /// Returns ½(A + Aᵀ).
  SparseMatrix symmetrized() const;
  SparseMatrix scaled(double factor) const;
  bool is_symmetric(double tol = 0.0) const;
  double spectral_norm() const;

  bool operator==(const SparseMatrix&) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Entry> entries_;
};

/// Block-diagonal assembly of square blocks.
SparseMatrix block_diagonal(std::span<const SparseMatrix> blocks);

/// Left-multiplies rows and columns by the same index map: B[perm(r), perm(c)] = A[r, c].
template <typename Perm>
SparseMatrix permuted(const SparseMatrix& a, Perm perm) {
  std::vector<Entry> out;
  out.reserve(a.entries().size());
  for (const Entry& e : a.entries()) out.push_back({perm(e.row), perm(e.col), e.value});
  return SparseMatrix(a.rows(), a.cols(), std::move(out));
}

}  // namespace qnls
