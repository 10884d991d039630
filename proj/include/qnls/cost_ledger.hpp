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

#include <cstdint>
#include <map>
#include <string>

#include "qnls/types.hpp"

namespace qnls {

/// Symbolic resource tally. Counters only grow; merge is associative and commutative.
struct CostLedger {
  std::uint64_t oracle_queries = 0;
  std::uint64_t primitive_ops = 0;
  double amplification_cost = 0.0;
  std::map<std::string, double> terms;

  /// Adds units (>= 0) to a labeled term.
  void charge(const std::string& label, double units);
  double term(const std::string& label) const;
  CostLedger& merge(const CostLedger& other);

  bool operator==(const CostLedger&) const = default;
};

CostLedger merge(const CostLedger& a, const CostLedger& b);

/// Encoding error used in cost formulas when none is specified.
constexpr double kNominalEps = 1e-6;

namespace cost {

/// log d + log^{2.5}(1/ε) for sparse-access encodings.
double sparse_access(Index dim, double eps);
/// log d + 1 for a state-preparation unitary.
double state_prep(Index dim);
/// factor·log(factor/ε) uses of the amplified encoding.
double amplification(double factor, double eps);
/// (1/σ)·log(1/(σε)) uses of the inverted encoding.
double inversion(double sigma, double eps);
/// (log(1/ε) + log(n)/2)·T_A·(1/ε) for extremal eigenvalue estimation.
double eigen_estimation(double eps, Index dim, double t_a);
/// O(m) for the LCU state preparation over m terms.
double lcu(Index m);

}  // namespace cost

}  // namespace qnls
