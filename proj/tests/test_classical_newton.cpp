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

#include <gtest/gtest.h>

#include "qnls/classical_newton.hpp"
#include "qnls/problems.hpp"

using namespace qnls;

namespace {

// f(x) = 0.5x² − 3x + 4 with roots 2 and 4.
Evaluator parabola() {
  return [](const Vector& x) {
    Vector f(1);
    f(0) = 0.5 * x(0) * x(0) - 3.0 * x(0) + 4.0;
    return f;
  };
}

JacobianFn parabola_slope() {
  return [](const Vector& x) {
    Matrix j(1, 1);
    j(0, 0) = x(0) - 3.0;
    return j;
  };
}

Vector scalar(double v) { return Vector::Constant(1, v); }

}  // namespace

TEST(Parabola, FirstStepFromFive) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(5.0), 1);
  ASSERT_EQ(t.iterates.size(), 2u);
  EXPECT_EQ(t.iterates[1](0), 4.25);
}

TEST(Parabola, FirstStepFromHalf) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(0.5), 1);
  EXPECT_NEAR(t.iterates[1](0), 1.55, 1e-15);
}

TEST(Parabola, ConvergesToFour) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(5.0), 6, 1e-10);
  EXPECT_NEAR(t.iterates.back()(0), 4.0, 1e-10);
  EXPECT_LE(t.residuals.back(), 1e-10);
  EXPECT_LE(t.iterates.size(), 7u);
  EXPECT_EQ(t.iterates.size(), t.residuals.size());
}

TEST(Parabola, HalfConvergesToTwo) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(0.5), 8, 1e-12);
  EXPECT_NEAR(t.iterates.back()(0), 2.0, 1e-10);
}

TEST(Residual, Examples) {
  EXPECT_DOUBLE_EQ(residual(parabola(), scalar(5.0)), 1.5);
  EXPECT_EQ(residual(parabola(), scalar(4.0)), 0.0);
  auto sys = random_system(3, 2, 2, 1);
  Vector x = random_initial(3, 2);
  Problem pr = sys;
  EXPECT_EQ(residual(problem_evaluator(pr), x), evaluate(sys, x).norm());
}

TEST(Newton, SingularPivotStopsWithPartialTrace) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(3.0), 5);
  EXPECT_FALSE(t.halt_reason.empty());
  EXPECT_EQ(t.iterates.size(), 1u);
  EXPECT_THROW(newton_direction(Matrix::Zero(2, 2), Vector::Ones(2)), SingularJacobian);
}

TEST(Newton, QuadraticConvergence) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(5.0), 6);
  const auto& r = t.residuals;
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k] <= 1e-14) break;
    EXPECT_LE(r[k], 1.0 * r[k - 1] * r[k - 1]);
  }
}

TEST(Newton, Deterministic) {
  LvParams p;
  p.v0 = 1.2;
  p.p0 = 0.9;
  Problem pr = lv_discretize(p);
  auto a = classical_newton(problem_evaluator(pr), problem_jacobian(pr), lv_constant_guess(p), 5);
  auto b = classical_newton(problem_evaluator(pr), problem_jacobian(pr), lv_constant_guess(p), 5);
  ASSERT_EQ(a.iterates.size(), b.iterates.size());
  for (std::size_t k = 0; k < a.iterates.size(); ++k) EXPECT_EQ(a.iterates[k], b.iterates[k]);
  EXPECT_EQ(a.residuals, b.residuals);
}

TEST(Newton, ProblemJacobianVariants) {
  InhomogeneousPolynomial g{{{(Vector(2) << 1, 0).finished(), {SparseMatrix::identity(2)}}}};
  InhomogeneousPolynomial h{{{(Vector(2) << 0, 1).finished(), {}}}};
  Problem pr = InhomogeneousSystem(2, (Vector(2) << -2, -1).finished(), {g, h});
  auto t = classical_newton(problem_evaluator(pr), problem_jacobian(pr), Vector::Constant(2, 0.8), 20,
                            1e-13);
  EXPECT_LE(t.residuals.back(), 1e-13);
  EXPECT_NEAR(t.iterates.back()(1), 1.0, 1e-12);
}

TEST(Records, EmptySigmaGamma) {
  auto t = classical_newton(parabola(), parabola_slope(), scalar(5.0), 2);
  auto rec = classical_records(t);
  ASSERT_EQ(rec.size(), 3u);
  EXPECT_FALSE(rec[0].sigma_k.has_value());
  EXPECT_FALSE(rec[0].gamma_k.has_value());
  EXPECT_DOUBLE_EQ(rec[0].x_norm_sq, 25.0);
  EXPECT_DOUBLE_EQ(rec[0].residual, 1.5);
  EXPECT_EQ(rec[2].k, 2);
}
