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

#include "qnls/cost_ledger.hpp"

#include <cmath>

namespace qnls {

void CostLedger::charge(const std::string& label, double units) {
  if (!(units >= 0.0) || !std::isfinite(units)) {
    throw InputError("ledger charge for '" + label + "' must be finite and non-negative");
  }
  terms[label] += units;
}

double CostLedger::term(const std::string& label) const {
  const auto it = terms.find(label);
  return it == terms.end() ? 0.0 : it->second;
}

CostLedger& CostLedger::merge(const CostLedger& other) {
  oracle_queries += other.oracle_queries;
  primitive_ops += other.primitive_ops;
  amplification_cost += other.amplification_cost;
  for (const auto& [label, value] : other.terms) terms[label] += value;
  return *this;
}

CostLedger merge(const CostLedger& a, const CostLedger& b) {
  CostLedger out = a;
  out.merge(b);
  return out;
}

namespace cost {

namespace {

double log2_dim(Index dim) { return std::log2(static_cast<double>(std::max<Index>(dim, 2))); }

void check_eps(double eps) {
  if (!(eps > 0.0) || eps >= 1.0) throw ConfigError("cost formulas require 0 < eps < 1");
}

}  // namespace

double sparse_access(Index dim, double eps) {
  check_eps(eps);
  return log2_dim(dim) + std::pow(std::log(1.0 / eps), 2.5);
}

double state_prep(Index dim) { return log2_dim(dim) + 1.0; }

double amplification(double factor, double eps) {
  check_eps(eps);
  if (factor <= 1.0) return 1.0;
  return factor * std::log(factor / eps);
}

double inversion(double sigma, double eps) {
  check_eps(eps);
  if (!(sigma > 0.0) || sigma >= 1.0) throw ConfigError("inversion cost requires 0 < sigma < 1");
  return std::log(1.0 / (sigma * eps)) / sigma;
}

double eigen_estimation(double eps, Index dim, double t_a) {
  check_eps(eps);
  return (std::log(1.0 / eps) + 0.5 * std::log(static_cast<double>(std::max<Index>(dim, 1)))) *
         t_a / eps;
}

double lcu(Index m) { return static_cast<double>(m); }

}  // namespace cost

}  // namespace qnls
