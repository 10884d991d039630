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
#include <string>
#include <vector>

#include "qnls/cost_ledger.hpp"
#include "qnls/problem_file.hpp"

namespace qnls {

/// Symbolic cost of the quantum pipeline and the classical operation count.
struct ResourceReport {
  std::string kind;
  Index n = 0;
  int p = 0;
  Index s = 0;
  int iterations = 0;
  double eps = 0.0;
  double eps_step = 0.0;
  double sigma = 0.0;

  /// Empty for problems the quantum pipeline does not accept.
  std::optional<CostLedger> quantum;
  /// Per-application cost of the final iterate encoding.
  double final_cost = 0.0;
  /// Per-application cost of each iterate encoding, k = 0..T.
  std::vector<double> iterate_costs;
  /// Asymptotic per-step growth of the walk: 4(2p−1)·a(ps)·inv(σ)·a(4/σ)[·a(2)].
  double model_step_factor = 0.0;

  /// ps·log(ps/ε)·(log n + (1/σ)log(1/(σε))).
  double bound_step_factor = 0.0;
  /// step_factor^{T+1}·(log n + log^{2.5}(1/ε)).
  double bound_dominant = 0.0;

  double classical_n_cubed = 0.0;
  /// K·p²·n·s; empty when K is not represented by the problem.
  std::optional<double> classical_gradient;
  double classical_evaluation = 0.0;
  double classical_total = 0.0;
};

/// Walks the pipeline's cost composition for T steps with every σ_k set to
/// sigma and per-step error eps/(3T); no matrices are formed.
ResourceReport estimate_resources(const Problem& problem, int T, double eps, double sigma);

/// Line-oriented `key = value` text with the fixed key set documented in the README.
std::string format_report(const ResourceReport& report);

}  // namespace qnls
