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

#include "qnls/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qnls/classical_newton.hpp"
#include "qnls/problems.hpp"

namespace qnls {
namespace {

constexpr double kBoundSlack = 1e-9;

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

int degree_p(const Problem& problem) {
  if (const auto* ps = std::get_if<PolynomialSystem>(&problem)) return ps->p();
  if (const auto* ms = std::get_if<MixedSystem>(&problem)) {
    return ms->nonlinear() ? ms->nonlinear()->p() : 1;
  }
  return std::max(1, std::get<InhomogeneousSystem>(problem).max_factors());
}

}  // namespace

std::vector<Vector> check_samples(Index n, int count) {
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    const double radius = 1.0 - static_cast<double>(k % 4) * 0.2;
    out.push_back(random_initial(n, 0x5eed + static_cast<std::uint64_t>(k), radius));
  }
  return out;
}

CheckResult check_jacobian_norm(const Problem& problem) {
  const Index n = problem_n(problem);
  const double root_n = std::sqrt(static_cast<double>(n));
  std::optional<double> bound;
  if (const auto* ps = std::get_if<PolynomialSystem>(&problem)) {
    bound = jacobian_norm_bound(*ps);
  } else if (const auto* ms = std::get_if<MixedSystem>(&problem)) {
    bound = ms->linear().spectral_norm() +
            (ms->nonlinear() ? jacobian_norm_bound(*ms->nonlinear()) : 0.0);
  }
  const JacobianFn jac = problem_jacobian(problem);
  double sampled = 0.0;
  for (const Vector& x : check_samples(n)) sampled = std::max(sampled, spectral_norm(jac(x)));
  const double worst = std::max(sampled, bound.value_or(0.0));
  const bool pass = worst <= root_n * (1.0 + kBoundSlack);
  std::string detail = fmt("max_sampled_norm=%.6g sqrt_n=%.6g", sampled, root_n);
  if (bound) detail += fmt(" bound=%.6g", *bound);
  return {"appendixA", pass, detail};
}

CheckResult check_rhs_norm(const Problem& problem) {
  const Index n = problem_n(problem);
  const double root_n = std::sqrt(static_cast<double>(n));
  const int p = degree_p(problem);
  const Evaluator f = problem_evaluator(problem);
  double worst_f = 0.0;
  double worst_rhs = 0.0;
  for (const Vector& x : check_samples(n)) {
    const double fx = f(x).norm();
    worst_f = std::max(worst_f, fx);
    const double gamma = std::abs(x(0));
    worst_rhs = std::max(worst_rhs, std::pow(gamma, 2 * p - 1) * fx * x.norm() / root_n);
  }
  const bool pass = worst_f <= root_n * (1.0 + kBoundSlack) && worst_rhs <= 1.0 + kBoundSlack;
  return {"appendixB", pass,
          fmt("max_F_norm=%.6g max_rhs_norm=%.6g sqrt_n=%.6g", worst_f, worst_rhs, root_n)};
}

CheckResult check_euler(const Problem& problem) {
  const PolynomialSystem* ps = std::get_if<PolynomialSystem>(&problem);
  if (const auto* ms = std::get_if<MixedSystem>(&problem)) {
    if (ms->nonlinear()) ps = &*ms->nonlinear();
  }
  if (ps == nullptr) return {"euler", true, "no homogeneous part"};
  double worst = 0.0;
  for (const Vector& x : check_samples(ps->n())) {
    const double scale = std::max({2.0 * ps->p() * evaluate(*ps, x).norm(),
                                   jacobian(*ps, x).norm() * x.norm(), 1e-300});
    worst = std::max(worst, euler_check(*ps, x) / scale);
  }
  return {"euler", worst <= 1e-10, fmt("max_relative_error=%.3g tol=%.0e", worst, 1e-10)};
}

CheckResult check_gradient(const Problem& problem) {
  const Index n = problem_n(problem);
  const Evaluator f = problem_evaluator(problem);
  const JacobianFn jac = problem_jacobian(problem);
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (const Vector& x : check_samples(n, 8)) {
    const Matrix j = jac(x);
    Matrix fd(n, n);
    for (Index c = 0; c < n; ++c) {
      Vector xp = x;
      Vector xm = x;
      xp(c) += h;
      xm(c) -= h;
      fd.col(c) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const double scale = std::max(j.norm(), 1e-12);
    worst = std::max(worst, (fd - j).norm() / scale);
  }
  return {"gradient", worst <= 1e-6, fmt("max_relative_error=%.3g tol=%.0e", worst, 1e-6)};
}

std::vector<CheckResult> run_checks(const Problem& problem, const std::vector<std::string>& suites) {
  if (suites.empty()) throw InputError("no check suite selected");
  std::vector<std::string> names;
  for (const std::string& s : suites) {
    if (s == "all") {
      for (const char* name : {"appendixA", "appendixB", "euler", "gradient"}) names.push_back(name);
    } else if (s == "appendixA" || s == "appendixB" || s == "euler" || s == "gradient") {
      names.push_back(s);
    } else {
      throw InputError("unknown check suite '" + s + "'");
    }
  }
  std::vector<CheckResult> out;
  for (const std::string& name : names) {
    if (name == "appendixA") out.push_back(check_jacobian_norm(problem));
    if (name == "appendixB") out.push_back(check_rhs_norm(problem));
    if (name == "euler") out.push_back(check_euler(problem));
    if (name == "gradient") out.push_back(check_gradient(problem));
  }
  return out;
}

}  // namespace qnls
