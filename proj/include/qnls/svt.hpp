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

#include <vector>

#include "qnls/block_encoding.hpp"

namespace qnls {

enum class InversionBackend { kExact, kPolynomial };

struct InversionConfig {
  /// Spectral threshold σ applied to the singular values of the block.
  double sigma_floor = 1e-3;
  double eps = 1e-6;
  InversionBackend backend = InversionBackend::kExact;

  /// Throws ConfigError unless 0 < σ < 1 and ε > 0.
  void validate() const;
};

/// Odd polynomial stored by its Chebyshev coefficients (index = degree).
struct OddPolynomial {
  std::vector<double> coefficients;

  int degree() const;
  double operator()(double x) const;
};

/// scale·poly(x) approximates σ/x on [σ, 1]; poly itself is bounded by 1 on [−1, 1].
struct InversePolynomial {
  OddPolynomial poly;
  double scale = 1.0;
  double sigma = 0.0;
  double eps = 0.0;
  /// Grid-measured sup of |scale·poly(x) − σ/x| over [σ, 1].
  double max_error = 0.0;
};

/// Largest degree build_inverse_poly will search.
constexpr int kMaxInverseDegree = 100000;

/// Chebyshev truncation of σ(1 − e^{−x²/w²})/x with w = σ/√ln(2/ε); the degree
/// is found by doubling then bisection until the grid error meets ε.
InversePolynomial build_inverse_poly(double sigma, double eps);

/// (1/σ)·log(1/(σε)), the degree scale of the inversion polynomial.
double inverse_degree_budget(double sigma, double eps);

/// Pseudoinverse of the encoded block with threshold σ = cfg.sigma_floor.
/// Singular values s ≥ σ/2 map to σ/s (exact) or scale·q(s) (polynomial);
/// the result encodes (α·block)⁺ and its block equals σ·block⁺ up to the
/// normalization max(1, max σ/s) carried in α.
BlockEncoding sv_invert(const BlockEncoding& be, const InversionConfig& cfg);

/// σ·α_in·extract(inverse): the σ-scaled pseudoinverse of the input block.
Matrix sigma_scaled_inverse(const BlockEncoding& inverse, double sigma, double alpha_in);

struct SpectralEstimate {
  double value = 0.0;
  CostLedger ledger;
};

/// Extremal eigenvalues of α·block for a symmetric PSD block.
SpectralEstimate max_eigenvalue(const BlockEncoding& be, double eps);
SpectralEstimate min_eigenvalue(const BlockEncoding& be, double eps);

/// sqrt(min_eigenvalue(transpose(be)·be)).
SpectralEstimate min_singular_value(const BlockEncoding& be, double eps);

}  // namespace qnls
