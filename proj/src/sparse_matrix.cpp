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

#include "qnls/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace qnls {

namespace {

bool row_major_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) throw InputError("sparse matrix dimensions must be positive");
  for (const Entry& e : entries_) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw InputError("sparse entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") out of range");
    }
    if (!std::isfinite(e.value)) throw InputError("sparse entry value is not finite");
  }
  std::sort(entries_.begin(), entries_.end(), row_major_less);
  for (size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].row == entries_[k - 1].row && entries_[k].col == entries_[k - 1].col) {
      throw InputError("duplicate sparse entry (" + std::to_string(entries_[k].row) + ", " +
                       std::to_string(entries_[k].col) + ")");
    }
  }
}

SparseMatrix SparseMatrix::accumulate(Index rows, Index cols, const std::vector<Entry>& entries) {
  std::map<std::pair<Index, Index>, double> sums;
  for (const Entry& e : entries) sums[{e.row, e.col}] += e.value;
  std::vector<Entry> out;
  for (const auto& [key, value] : sums) {
    if (value != 0.0) out.push_back({key.first, key.second, value});
  }
  return SparseMatrix(rows, cols, std::move(out));
}

SparseMatrix SparseMatrix::from_dense(const Matrix& dense) {
  std::vector<Entry> out;
  for (Index r = 0; r < dense.rows(); ++r) {
    for (Index c = 0; c < dense.cols(); ++c) {
      if (dense(r, c) != 0.0) out.push_back({r, c, dense(r, c)});
    }
  }
  return SparseMatrix(dense.rows(), dense.cols(), std::move(out));
}

SparseMatrix SparseMatrix::identity(Index n, double scale) {
  std::vector<Entry> out;
  if (scale != 0.0) {
    for (Index i = 0; i < n; ++i) out.push_back({i, i, scale});
  }
  return SparseMatrix(n, n, std::move(out));
}

SparseMatrix SparseMatrix::zero(Index rows, Index cols) { return SparseMatrix(rows, cols, {}); }

Index SparseMatrix::max_row_nnz() const {
  std::vector<Index> count(rows_, 0);
  for (const Entry& e : entries_) ++count[e.row];
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

Index SparseMatrix::max_col_nnz() const {
  std::vector<Index> count(cols_, 0);
  for (const Entry& e : entries_) ++count[e.col];
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

Index SparseMatrix::sparsity() const { return std::max(max_row_nnz(), max_col_nnz()); }

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

Matrix SparseMatrix::to_dense() const {
  Matrix out = Matrix::Zero(rows_, cols_);
  for (const Entry& e : entries_) out(e.row, e.col) = e.value;
  return out;
}

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != cols_) throw InputError("sparse multiply dimension mismatch");
  Vector y = Vector::Zero(rows_);
  for (const Entry& e : entries_) y(e.row) += e.value * x(e.col);
  return y;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back({e.col, e.row, e.value});
  return SparseMatrix(cols_, rows_, std::move(out));
}

SparseMatrix SparseMatrix::symmetrized() const {
  if (!square()) throw InputError("symmetrization requires a square matrix");
  std::vector<Entry> both;
  both.reserve(2 * entries_.size());
  for (const Entry& e : entries_) {
    both.push_back({e.row, e.col, 0.5 * e.value});
    both.push_back({e.col, e.row, 0.5 * e.value});
  }
  return accumulate(rows_, cols_, both);
}

SparseMatrix SparseMatrix::scaled(double factor) const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) {
    if (e.value * factor != 0.0) out.push_back({e.row, e.col, e.value * factor});
  }
  return SparseMatrix(rows_, cols_, std::move(out));
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (!square()) return false;
  const Matrix d = to_dense();
  return (d - d.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double SparseMatrix::spectral_norm() const {
  require_desk_scale(std::max(rows_, cols_), "spectral norm");
  if (entries_.empty()) return 0.0;
  return qnls::spectral_norm(to_dense());
}

SparseMatrix block_diagonal(std::span<const SparseMatrix> blocks) {
  Index dim = 0;
  for (const SparseMatrix& b : blocks) {
    if (!b.square()) throw InputError("block_diagonal requires square blocks");
    dim += b.rows();
  }
  std::vector<Entry> out;
  Index offset = 0;
  for (const SparseMatrix& b : blocks) {
    for (const Entry& e : b.entries()) out.push_back({e.row + offset, e.col + offset, e.value});
    offset += b.rows();
  }
  return SparseMatrix(dim, dim, std::move(out));
}

}  // namespace qnls
