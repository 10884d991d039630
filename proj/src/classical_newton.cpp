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

#include "qnls/classical_newton.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>

namespace qnls {

Vector newton_direction(const Matrix& jac, const Vector& f) {
  if (jac.rows() != jac.cols() || jac.rows() != f.size()) {
    throw InputError("Jacobian and residual shapes do not match");
  }
  const Eigen::PartialPivLU<Matrix> lu(jac);
  const Matrix& packed = lu.matrixLU();
  for (Index i = 0; i < packed.rows(); ++i) {
    if (!(std::abs(packed(i, i)) >= kSingularPivot)) {
      throw SingularJacobian("LU pivot " + std::to_string(packed(i, i)) + " at column " +
                             std::to_string(i) + " is below " + std::to_string(kSingularPivot));
    }
  }
  return lu.solve(f);
}

ClassicalTrace classical_newton(const Evaluator& f, const JacobianFn& jac, const Vector& x0, int T,
                                double tol) {
  if (T < 0) throw InputError("iteration count must be non-negative");
  ClassicalTrace trace;
  Vector x = x0;
  Vector fx = f(x);
  trace.iterates.push_back(x);
  trace.residuals.push_back(fx.norm());
  for (int k = 0; k < T && trace.residuals.back() > tol; ++k) {
    try {
      x -= newton_direction(jac(x), fx);
    } catch (const SingularJacobian& e) {
      trace.halt_reason = e.what();
      break;
    }
    fx = f(x);
    trace.iterates.push_back(x);
    trace.residuals.push_back(fx.norm());
  }
  return trace;
}

double residual(const Evaluator& f, const Vector& x) { return f(x).norm(); }

Evaluator problem_evaluator(const Problem& problem) {
  return std::visit(
      [](const auto& sys) -> Evaluator {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PolynomialSystem>) {
          return [sys](const Vector& x) { return evaluate(sys, x); };
        } else if constexpr (std::is_same_v<T, MixedSystem>) {
          return [sys](const Vector& x) { return mixed_evaluate(sys, x); };
        } else {
          return [sys](const Vector& x) { return inhomogeneous_evaluate(sys, x); };
        }
      },
      problem);
}

JacobianFn problem_jacobian(const Problem& problem) {
  return std::visit(
      [](const auto& sys) -> JacobianFn {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, PolynomialSystem>) {
          return [sys](const Vector& x) { return jacobian(sys, x); };
        } else if constexpr (std::is_same_v<T, MixedSystem>) {
          return [sys](const Vector& x) { return mixed_jacobian(sys, x); };
        } else {
          return [sys](const Vector& x) { return inhomogeneous_jacobian(sys, x); };
        }
      },
      problem);
}

std::vector<TraceRecord> classical_records(const ClassicalTrace& trace) {
  std::vector<TraceRecord> out;
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    TraceRecord r;
    r.k = static_cast<int>(k);
    r.residual = trace.residuals[k];
    r.x_norm_sq = trace.iterates[k].squaredNorm();
    out.push_back(r);
  }
  return out;
}

}  // namespace qnls
