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

#include <string>
#include <vector>

#include "qnls/problem_file.hpp"

namespace qnls {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Deterministic sample points with norm at most 1 used by the suites.
std::vector<Vector> check_samples(Index n, int count = 16);

/// ‖J(x)‖ ≤ √n: the canonical bound (‖L‖ + sqrt(Σ(p‖A_i‖)²) ≤ √n) plus sampled norms.
CheckResult check_jacobian_norm(const Problem& problem);

/// ‖F(x)‖ ≤ √n and ‖γ^{2p−1}F(x)xᵀ/√n‖ ≤ 1 on the samples.
CheckResult check_rhs_norm(const Problem& problem);

/// J_nl(x)x = 2p·F_nl(x) to 1e-10 relative on the homogeneous part.
CheckResult check_euler(const Problem& problem);

/// Analytic Jacobian against central differences (step 1e-5, relative 1e-6).
CheckResult check_gradient(const Problem& problem);

/// Suite names: appendixA, appendixB, euler, gradient, all.
std::vector<CheckResult> run_checks(const Problem& problem, const std::vector<std::string>& suites);

}  // namespace qnls
