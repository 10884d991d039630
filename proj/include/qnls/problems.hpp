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

#include <complex>
#include <cstdint>
#include <vector>

#include "qnls/poly_system.hpp"

namespace qnls {

enum class GpeBoundary { kDirichlet, kPeriodic };

/// One Crank-Nicolson step of the 1D Gross-Pitaevskii equation.
struct GpeParams {
  Index nx = 4;
  double hbar2_over_2m = 1.0;
  double g = 0.0;
  /// V_j; empty means zero potential.
  std::vector<double> potential;
  double dt = 0.1;
  double dx = 1.0;
  /// ψ^n on the grid.
  std::vector<std::complex<double>> psi_prev;
  GpeBoundary boundary = GpeBoundary::kDirichlet;

  /// Throws InputError on nx < 3, non-positive steps or mismatched vectors.
  void validate() const;
};

/// Unknowns Re ψ_j^{n+1} then Im ψ_j^{n+1}. For g ≠ 0 a pinned variable m
/// (index 0, equation m − 1 = 0) multiplies the cubic term, making it a
/// quartic form with p = 2; for g = 0 the system is purely linear.
MixedSystem gpe_discretize(const GpeParams& params);

/// Index of Re ψ_j and Im ψ_j in the GPE unknown vector.
Index gpe_re_index(const GpeParams& params, Index j);
Index gpe_im_index(const GpeParams& params, Index j);

/// Unknown vector holding ψ (and m = 1 when g ≠ 0).
Vector gpe_state(const GpeParams& params, const std::vector<std::complex<double>>& psi);

/// Forward-Euler Lotka-Volterra trajectory.
struct LvParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
  double dt = 0.1;
  Index steps = 3;
  double v0 = 1.0;
  double p0 = 1.0;

  void validate() const;
};

/// Unknowns V_1..V_S then P_1..P_S; equation n updates V_{n+1}, equation S + n updates P_{n+1}.
MixedSystem lv_discretize(const LvParams& params);

/// Constant trajectory V_n = v0, P_n = p0.
Vector lv_constant_guess(const LvParams& params);

/// Each A_i is a sum of s random symmetric involution layers with values in
/// [−1, 1], then canonically rescaled. Deterministic in seed.
PolynomialSystem random_system(Index n, int p, Index s, std::uint64_t seed);

/// Uniform direction on the unit sphere scaled by radius.
Vector random_initial(Index n, std::uint64_t seed, double radius = 0.9);

}  // namespace qnls
