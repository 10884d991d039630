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

#include <optional>
#include <vector>

#include "qnls/sparse_matrix.hpp"
#include "qnls/types.hpp"

namespace qnls {

/// n^p with overflow and desk-scale checks.
Index tensor_dim(Index n, int p);

/// x^{⊗p} with the first factor most significant. p = 0 gives the scalar 1.
Vector tensor_power(const Vector& x, int p);

/// Swaps tensor factor j (0-based) with the last of p factors of dimension n.
class FactorPermutation {
 public:
  FactorPermutation(int p, Index n, int j);

  int p() const { return p_; }
  Index n() const { return n_; }
  int j() const { return j_; }

  Index apply(Index index) const;
  SparseMatrix matrix() const;

 private:
  int p_;
  Index n_;
  int j_;
  Index stride_j_;
};

/// n homogeneous polynomials f_i = ½ (x^{⊗p})ᵀ A_i x^{⊗p} of degree 2p.
class PolynomialSystem {
 public:
  /// Validates shapes and the declared sparsity. scale_factor records
  /// any canonical rescaling already applied to the matrices.
  PolynomialSystem(Index n, int p, Index sparsity, std::vector<SparseMatrix> equations,
                   double scale_factor = 1.0);

  Index n() const { return n_; }
  int p() const { return p_; }
  Index sparsity() const { return sparsity_; }
  Index tensor_dim() const { return dim_; }
  double scale_factor() const { return scale_factor_; }

  /// Matrices as given.
  const std::vector<SparseMatrix>& equations() const { return equations_; }
  /// ½(A_i + A_iᵀ); these drive every derivative computation.
  const std::vector<SparseMatrix>& symmetric() const { return symmetric_; }
  /// Sparsity of the symmetrized matrices.
  Index symmetric_sparsity() const;

 private:
  Index n_;
  int p_;
  Index sparsity_;
  Index dim_;
  double scale_factor_;
  std::vector<SparseMatrix> equations_;
  std::vector<SparseMatrix> symmetric_;
};

Vector evaluate(const PolynomialSystem& system, const Vector& x);

/// D_i(x) = Tr_{1..p-1}{((xxᵀ)^{⊗p-1} ⊗ I) M_D^i} with M_D^i = Σ_j Q_j A_i Q_j.
Matrix gradient_operator(const PolynomialSystem& system, Index i, const Vector& x);

/// D_i(x)·x, the gradient of f_i (0-based i).
Vector gradient_md(const PolynomialSystem& system, Index i, const Vector& x);

Matrix jacobian(const PolynomialSystem& system, const Vector& x);

/// ‖J(x)x − 2p·F(x)‖.
double euler_check(const PolynomialSystem& system, const Vector& x);

/// M_D^i = Σ_j Q_j A_i Q_j built from the symmetrized A_i.
SparseMatrix md_operator(const PolynomialSystem& system, Index i);

/// Sum over j of Q_j (blockdiag_i A_i) Q_j restricted to one j: blockdiag_i Q_j A_i Q_j.
SparseMatrix md_slice(const PolynomialSystem& system, int j);

/// max_i ‖A_i‖₂ of the symmetrized matrices.
double max_equation_norm(const PolynomialSystem& system);

/// sqrt(Σ_i (p‖A_i‖₂)²), an upper bound on ‖J(x)‖ for ‖x‖ ≤ 1.
double jacobian_norm_bound(const PolynomialSystem& system);

/// Symmetrizes and scales all A_i by one factor c ≤ 1 so that
/// sqrt(Σ_i (p‖A_i‖)²) ≤ (1 − margin)·√n and max |entry| ≤ 1.
PolynomialSystem canonicalize(const PolynomialSystem& system, double margin = 1e-4);

/// Multiplies every A_i by factor (roots are unchanged).
PolynomialSystem scale_equations(const PolynomialSystem& system, double factor);

/// Equation i is b_i + (Lx)_i + f_i(x).
class MixedSystem {
 public:
  MixedSystem(Index n, Vector constants, SparseMatrix linear,
              std::optional<PolynomialSystem> nonlinear, double scale_factor = 1.0);

  Index n() const { return n_; }
  const Vector& constants() const { return constants_; }
  const SparseMatrix& linear() const { return linear_; }
  const std::optional<PolynomialSystem>& nonlinear() const { return nonlinear_; }
  double scale_factor() const { return scale_factor_; }

 private:
  Index n_;
  Vector constants_;
  SparseMatrix linear_;
  std::optional<PolynomialSystem> nonlinear_;
  double scale_factor_;
};

MixedSystem as_mixed(const PolynomialSystem& system);

Vector mixed_evaluate(const MixedSystem& ms, const Vector& x);
Matrix mixed_jacobian(const MixedSystem& ms, const Vector& x);

/// Scales b, L and every A_i by one factor c ≤ 1 so that
/// ‖L‖ + sqrt(Σ_i (p‖A_i‖)²) ≤ (1 − margin)·√n and the nonlinear entries lie in [−1, 1].
MixedSystem canonicalize(const MixedSystem& ms, double margin = 1e-4);

/// The system in y where x = lambda·y: constants b, linear λL, nonlinear λ^{2p}A_i.
MixedSystem scale_variables(const MixedSystem& ms, double lambda);

/// One term (cᵀx)·Π_k (xᵀB_k x).
struct InhomogeneousTerm {
  Vector c;
  std::vector<SparseMatrix> Bs;
};

struct InhomogeneousPolynomial {
  std::vector<InhomogeneousTerm> terms;
};

double eval_inhomogeneous(const InhomogeneousPolynomial& g, const Vector& x);
Vector gradient_inhomogeneous(const InhomogeneousPolynomial& g, const Vector& x);

/// n equations b_i + g_i(x).
class InhomogeneousSystem {
 public:
  InhomogeneousSystem(Index n, Vector constants, std::vector<InhomogeneousPolynomial> equations);

  Index n() const { return n_; }
  const Vector& constants() const { return constants_; }
  const std::vector<InhomogeneousPolynomial>& equations() const { return equations_; }
  /// Largest number of B factors in any term.
  int max_factors() const;
  /// Largest sparsity of any B factor.
  Index max_sparsity() const;

 private:
  Index n_;
  Vector constants_;
  std::vector<InhomogeneousPolynomial> equations_;
};

Vector inhomogeneous_evaluate(const InhomogeneousSystem& sys, const Vector& x);
Matrix inhomogeneous_jacobian(const InhomogeneousSystem& sys, const Vector& x);

}  // namespace qnls
