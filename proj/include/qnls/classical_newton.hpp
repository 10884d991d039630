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

#include <functional>
#include <string>
#include <vector>

#include "qnls/problem_file.hpp"
#include "qnls/quantum_newton.hpp"
#include "qnls/types.hpp"

namespace qnls {

using Evaluator = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

struct ClassicalTrace {
  std::vector<Vector> iterates;
  std::vector<double> residuals;
  /// Empty unless the run stopped on a singular Jacobian.
  std::string halt_reason;
};

/// Pivot magnitude below which the LU factorization is declared singular.
constexpr double kSingularPivot = 1e-12;

/// Solves J·Δ = F by LU with partial pivoting. Throws SingularJacobian.
Vector newton_direction(const Matrix& jac, const Vector& f);

/// Up to T Newton steps x_{k+1} = x_k − J(x_k)⁻¹F(x_k), stopping once the
/// residual is at most tol. A singular Jacobian ends the run with a partial trace.
ClassicalTrace classical_newton(const Evaluator& f, const JacobianFn& jac, const Vector& x0, int T,
                                double tol = 0.0);

/// ‖F(x)‖₂.
double residual(const Evaluator& f, const Vector& x);

Evaluator problem_evaluator(const Problem& problem);
JacobianFn problem_jacobian(const Problem& problem);

/// Trace rows with empty sigma/gamma and an empty ledger.
std::vector<TraceRecord> classical_records(const ClassicalTrace& trace);

}  // namespace qnls
