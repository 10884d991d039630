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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qnls/cost_ledger.hpp"
#include "qnls/sparse_matrix.hpp"
#include "qnls/types.hpp"

namespace qnls {

/// Unitary U on (ancilla ⊗ system), ancilla-major, whose top-left
/// logical_dim block times alpha approximates the encoded operator.
///
/// Small encodings store U explicitly. Above the materialization cap only
/// the block is kept and unitary() returns its dilation on demand.
class BlockEncoding {
 public:
  /// Literal encoding from a unitary. The block is read from U.
  static BlockEncoding from_unitary(Matrix unitary, Index logical_dim, double alpha, double eps,
                                    double cost, CostLedger ledger,
                                    std::optional<Matrix> intended = std::nullopt);

  /// Encoding of a contraction. Stores its dilation when small enough.
  static BlockEncoding from_block(Matrix block, double alpha, double eps, double cost,
                                  CostLedger ledger, std::optional<Matrix> intended = std::nullopt);

  Index logical_dim() const { return block_->rows(); }
  Index ancilla_dim() const;
  double alpha() const { return alpha_; }
  double eps() const { return eps_; }
  /// Symbolic cost of one application of U.
  double cost() const { return cost_; }
  const CostLedger& ledger() const { return ledger_; }

  /// Top-left logical block of U.
  const Matrix& block() const { return *block_; }
  bool has_stored_unitary() const { return unitary_ != nullptr; }
  /// Stored U, or the dilation of the block.
  Matrix unitary() const;
  const std::optional<Matrix>& intended() const { return *intended_; }

  /// Same encoding carrying a different ledger.
  BlockEncoding with_ledger(CostLedger ledger) const;

 private:
  BlockEncoding() = default;
  void verify() const;

  std::shared_ptr<const Matrix> block_;
  std::shared_ptr<const Matrix> unitary_;
  std::shared_ptr<const std::optional<Matrix>> intended_;
  double alpha_ = 1.0;
  double eps_ = 0.0;
  double cost_ = 0.0;
  CostLedger ledger_;
};

/// Largest a·d for which composites store their unitary explicitly.
Index materialization_cap();
void set_materialization_cap(Index cap);

/// [[B, (I−BBᵀ)^{1/2}], [(I−BᵀB)^{1/2}, −Bᵀ]] for ‖B‖ ≤ 1.
Matrix unitary_dilation(const Matrix& b);

/// ‖UᵀU − I‖_F.
double unitarity_defect(const Matrix& u);

/// α·block.
Matrix extract_block(const BlockEncoding& be);

BlockEncoding be_identity(Index d);

/// c·I with |c| ≤ 1 (α = 1).
BlockEncoding be_scalar(double c, Index d);

/// A/s with α = s. Entries must lie in [−1, 1] and rows/columns hold at most s nonzeros.
BlockEncoding be_from_sparse(const SparseMatrix& a, Index s, double eps = kNominalEps);

/// xxᵀ with α = 1 for ‖x‖ ≤ 1.
BlockEncoding be_from_vector(const Vector& x);

/// u vᵀ with α = 1 for ‖u‖, ‖v‖ ≤ 1.
BlockEncoding be_from_outer(const Vector& u, const Vector& v);

BlockEncoding be_product(const BlockEncoding& left, const BlockEncoding& right);

BlockEncoding be_tensor(const std::vector<BlockEncoding>& factors);

/// (1/m) Σ sign_i·block_i with α = m·α_common. When renormalize is set,
/// terms with smaller α are first raised to the largest α.
BlockEncoding be_sum(const std::vector<BlockEncoding>& terms, const std::vector<int>& signs,
                     bool renormalize = true);

/// Same encoded operator with block multiplied by factor and α divided by it.
/// Requires factor·‖block‖ ≤ 1 − 1e-6.
BlockEncoding be_amplify(const BlockEncoding& be, double factor, double eps = kNominalEps);

/// Largest factor ≤ limit accepted by be_amplify.
double max_amplification(const BlockEncoding& be, double limit);

BlockEncoding be_transpose(const BlockEncoding& be);

/// Same operator with a larger α (block shrinks by α/new_alpha).
BlockEncoding be_renormalize(const BlockEncoding& be, double new_alpha);

/// Encoded operator multiplied by factor > 0 through α alone.
BlockEncoding be_relabel(const BlockEncoding& be, double factor);

/// Encoded operator multiplied by c with |c| ≤ 1; α unchanged.
BlockEncoding be_scale(const BlockEncoding& be, double c);

/// Block V_outᵀ·block·V_in for isometries V (D × n, orthonormal columns).
/// Realized as (I ⊗ Q_out)ᵀ U (I ⊗ Q_in) with Q completing V to an
/// orthogonal matrix; α is unchanged and n must divide D.
BlockEncoding be_isometry_sandwich(const BlockEncoding& be, const Matrix& v_out,
                                   const Matrix& v_in);

/// Orthogonal m×m matrix whose first column is uniform 1/√m.
Matrix uniform_householder(Index m);

/// Row-major text dump of the unitary with 17 significant digits.
std::string dump_text(const BlockEncoding& be);

}  // namespace qnls
