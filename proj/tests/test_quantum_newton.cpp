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

#include <cmath>
#include <random>

#include "qnls/classical_newton.hpp"
#include "qnls/problems.hpp"
#include "qnls/quantum_newton.hpp"

using namespace qnls;
using Eigen::Vector2d;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_power(const Matrix& m, int p) {
  Matrix out = Matrix::Ones(1, 1);
  for (int k = 0; k < p; ++k) out = kron(out, m);
  return out;
}

// f_i = x_i²/2 so that every entry fits the sparse oracle.
PolynomialSystem half_diag() {
  return PolynomialSystem(2, 1, 1,
                          {SparseMatrix(2, 2, {{0, 0, 1.0}}), SparseMatrix(2, 2, {{1, 1, 1.0}})});
}

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

Vector unit_ball_point(Index n, std::uint64_t seed, double radius) {
  return random_initial(n, seed, radius);
}

// Σ_i |i⟩⟨i| ⊗ (xxᵀ)^{⊗p−1} ⊗ ∇f_i xᵀ from gradient_md.
Matrix dense_P(const PolynomialSystem& sys, const Vector& x) {
  const Index n = sys.n();
  const int p = sys.p();
  const Index big = tensor_dim(n, p);
  Matrix out = Matrix::Zero(n * big, n * big);
  const Matrix lead = kron_power(x * x.transpose(), p - 1);
  for (Index i = 0; i < n; ++i) {
    Matrix g = gradient_md(sys, i, x) * x.transpose();
    out.block(i * big, i * big, big, big) = kron(lead, g);
  }
  return out;
}

NewtonOptions options(double sigma_floor = 1e-3, ReferenceMode ref = ReferenceMode::kFirstBasis) {
  NewtonOptions o;
  o.inversion.sigma_floor = sigma_floor;
  o.reference = ref;
  return o;
}

LvParams lv_params() {
  LvParams p;
  p.v0 = 1.2;
  p.p0 = 0.9;
  return p;
}

GpeParams gpe_params() {
  GpeParams p;
  p.g = 1.0;
  p.psi_prev = {{0.5, 0.1}, {0.6, -0.2}, {0.4, 0.3}, {0.3, 0.0}};
  return p;
}

}  // namespace

TEST(BuildM, LinearCaseIsBlockDiagonal) {
  auto sys = half_diag();
  auto be = build_M_blockdiag(sys);
  EXPECT_DOUBLE_EQ(be.alpha(), 1.0);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(3, 3) = 1.0;
  EXPECT_LE((extract_block(be) - expect).norm(), 1e-14);
}

TEST(BuildM, IdentityQuarticGivesTwoI) {
  PolynomialSystem sys(2, 2, 1, {SparseMatrix::identity(4), SparseMatrix::identity(4)});
  auto be = build_M_blockdiag(sys);
  EXPECT_DOUBLE_EQ(be.alpha(), 2.0);
  EXPECT_LE((extract_block(be) - 2.0 * Matrix::Identity(8, 8)).norm(), 1e-14);
}

TEST(BuildM, RandomMatchesDenseAssembly) {
  auto sys = random_system(2, 2, 2, 3);
  auto be = build_M_blockdiag(sys);
  EXPECT_DOUBLE_EQ(be.alpha(), sys.p() * static_cast<double>(sys.symmetric_sparsity()));
  Matrix expect = Matrix::Zero(8, 8);
  for (Index i = 0; i < 2; ++i) {
    Matrix a = sys.symmetric()[i].to_dense();
    Matrix m = Matrix::Zero(4, 4);
    for (int j = 0; j < 2; ++j) {
      Matrix q = FactorPermutation(2, 2, j).matrix().to_dense();
      m += q * a * q;
    }
    expect.block(4 * i, 4 * i, 4, 4) = m;
  }
  EXPECT_LE((extract_block(be) - expect).norm(), 1e-9);
}

TEST(BuildA, BlocksAreHalfMatrices) {
  PolynomialSystem one(1, 1, 1, {SparseMatrix(1, 1, {{0, 0, 1.0}})});
  EXPECT_LE((extract_block(build_A_blockdiag(one)) - 0.5 * Matrix::Identity(1, 1)).norm(), 1e-15);
  auto sys = random_system(3, 1, 2, 5);
  Matrix expect = Matrix::Zero(9, 9);
  for (Index i = 0; i < 3; ++i) expect.block(3 * i, 3 * i, 3, 3) = 0.5 * sys.symmetric()[i].to_dense();
  auto be = build_A_blockdiag(sys);
  EXPECT_DOUBLE_EQ(be.alpha(), static_cast<double>(sys.symmetric_sparsity()));
  EXPECT_LE((extract_block(be) - expect).norm(), 1e-10);
}

TEST(BuildP, ZeroIterate) {
  auto sys = half_diag();
  auto be = build_P(build_M_blockdiag(sys), be_from_vector(Vector::Zero(2)), 1, 2);
  EXPECT_LE(extract_block(be).norm(), 1e-15);
}

TEST(BuildP, DiagonalFirstBasis) {
  // f₁ = x₁² (A₁ = diag(2, 0)) encoded at half scale.
  auto sys = half_diag();
  auto be = build_P(build_M_blockdiag(sys), be_from_vector(Vector::Unit(2, 0)), 1, 2);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 2.0;
  EXPECT_LE((2.0 * extract_block(be) - expect).norm(), 1e-14);
}

TEST(BuildP, RandomMatchesGradientOracle) {
  for (int p = 1; p <= 2; ++p) {
    auto sys = random_system(2, p, 2, 20 + p);
    Vector x = unit_ball_point(2, 30 + p, 0.8);
    auto be = build_P(build_M_blockdiag(sys), be_from_vector(x), p, 2);
    EXPECT_LE((extract_block(be) - dense_P(sys, x)).norm(), 1e-9) << "p=" << p;
  }
}

TEST(JacobianSandwich, MatrixElementIdentity) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int p = 1 + static_cast<int>(seed % 2);
    const Index n = 2 + static_cast<Index>(seed % 2);
    auto sys = random_system(n, p, 2, 50 + seed);
    Vector x = unit_ball_point(n, 60 + seed, 0.9);
    Vector ref = Vector::Unit(n, 0);
    const double gamma = ref.dot(x);
    auto be_m = build_M_blockdiag(sys);
    auto sw = jacobian_sandwich(build_P(be_m, be_from_vector(x), p, n), ref, p, n);
    const double ps = p * static_cast<double>(sys.symmetric_sparsity());
    Matrix j = jacobian(sys, x);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) {
        const double want = std::pow(gamma, 2 * p - 1) * j(k, i) / (std::sqrt(double(n)) * ps);
        EXPECT_NEAR(sw.block()(i, k), want, 1e-9);
      }
  }
}

TEST(JacobianBe, FirstBasisIsJacobian) {
  auto sys = half_diag();
  auto r = jacobian_be(sys, be_from_vector(Vector::Unit(2, 0)), Vector::Unit(2, 0), Vector::Unit(2, 0));
  EXPECT_DOUBLE_EQ(r.gamma, 1.0);
  EXPECT_LE((std::sqrt(2.0) * extract_block(r.be) - jacobian(sys, Vector::Unit(2, 0))).norm(), 1e-9);
}

TEST(JacobianBe, DiagonalExample) {
  // The x_i² system scaled by one half; doubling recovers J = diag(1.2, 1.6).
  auto sys = half_diag();
  Vector x = v2(0.6, 0.8);
  auto r = jacobian_be(sys, be_from_vector(x), x, Vector::Unit(2, 0));
  EXPECT_NEAR(r.gamma, 0.6, 1e-15);
  Matrix j = Vector2d(1.2, 1.6).asDiagonal();
  EXPECT_LE((2.0 * extract_block(r.be) - 0.6 * j / std::sqrt(2.0)).norm(), 1e-9);
  EXPECT_DOUBLE_EQ(r.be.alpha(), 1.0);
}

TEST(JacobianBe, RandomMatchesOracle) {
  for (int p = 1; p <= 2; ++p) {
    auto sys = random_system(3, p, 2, 70 + p);
    Vector x = unit_ball_point(3, 80 + p, 0.7);
    Vector ref = x / x.norm();
    auto r = jacobian_be(sys, be_from_vector(x), x, ref);
    Matrix want = std::pow(r.gamma, 2 * p - 1) * jacobian(sys, x) / std::sqrt(3.0);
    EXPECT_LE((extract_block(r.be) - want).norm(), 1e-8);
    EXPECT_LE(spectral_norm(extract_block(r.be)), 1.0);
  }
}

TEST(JacobianBe, DegenerateReference) {
  auto sys = half_diag();
  Vector x = v2(0.0, 0.8);
  EXPECT_THROW(jacobian_be(sys, be_from_vector(x), x, Vector::Unit(2, 0)), DegenerateReference);
}

TEST(RhsBe, ZeroAndDiagonal) {
  auto sys = half_diag();
  Vector zero = Vector::Zero(2);
  EXPECT_THROW(rhs_be(sys, be_from_vector(zero), zero, Vector::Unit(2, 0)), DegenerateReference);
  Vector x = v2(0.6, 0.8);
  auto be = rhs_be(sys, be_from_vector(x), x, Vector::Unit(2, 0));
  Vector f = v2(0.36, 0.64);
  EXPECT_LE((2.0 * extract_block(be) - 0.6 * f * x.transpose() / std::sqrt(2.0)).norm(), 1e-9);
}

TEST(RhsBe, RandomMatchesEvaluate) {
  for (int p = 1; p <= 2; ++p) {
    auto sys = random_system(3, p, 2, 90 + p);
    Vector x = unit_ball_point(3, 95 + p, 0.8);
    Vector ref = Vector::Unit(3, 0);
    if (std::abs(x(0)) < 0.1) ref = x / x.norm();
    const double gamma = ref.dot(x);
    auto be = rhs_be(sys, be_from_vector(x), x, ref);
    Matrix want = std::pow(gamma, 2 * p - 1) * evaluate(sys, x) * x.transpose() / std::sqrt(3.0);
    EXPECT_LE((extract_block(be) - want).norm(), 1e-8);
    EXPECT_LE((extract_block(be_transpose(be)) - want.transpose()).norm(), 1e-8);
  }
}

TEST(NormEstimate, Examples) {
  EXPECT_NEAR(norm_estimate(be_from_vector(Vector::Unit(3, 1)), 1e-6).value, 1.0, 1e-12);
  EXPECT_NEAR(norm_estimate(be_from_vector(v2(0.36, 0.48)), 1e-6).value, 0.36, 1e-6);
  Vector x = unit_ball_point(4, 3, 0.77);
  EXPECT_NEAR(norm_estimate(be_from_vector(x), 1e-6).value, x.squaredNorm(), 1e-6);
}

TEST(FactorCancellation, ProductIsNewtonDirection) {
  auto sys = random_system(3, 2, 2, 101);
  auto enc = encode_system(as_mixed(sys));
  Vector x = unit_ball_point(3, 102, 0.6);
  Vector ref = x / x.norm();
  auto se = step_encodings(enc, be_from_vector(x), x, ref, 1e-6);
  const double sigma = min_singular_value(se.jacobian, 1e-6).value;
  InversionConfig cfg;
  cfg.sigma_floor = sigma / se.jacobian.alpha() * (1 - 1e-8);
  auto inv = sv_invert(se.jacobian, cfg);
  const auto& c = *enc.system.nonlinear();
  Vector delta = jacobian(c, x).lu().solve(evaluate(c, x));
  EXPECT_LE((extract_block(be_product(inv, se.rhs)) - delta * x.transpose()).norm(), 1e-8);
}

TEST(NormBound, ScaledJacobianIsContraction) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int p = 1 + static_cast<int>(seed % 3);
    auto sys = random_system(2, p, 2, 200 + seed);
    Vector x = unit_ball_point(2, 300 + seed, 1.0);
    auto r = jacobian_be(sys, be_from_vector(x), x, Vector::Unit(2, 0).dot(x) >= 0
                                                        ? Vector(Vector::Unit(2, 0))
                                                        : Vector(-Vector::Unit(2, 0)));
    EXPECT_LE(spectral_norm(extract_block(r.be)), 1.0 + 1e-12);
  }
}

TEST(NewtonStep, HomogeneousContraction) {
  for (int p = 1; p <= 2; ++p) {
    auto sys = random_system(2, p, 2, 400 + p);
    auto enc = encode_system(as_mixed(sys));
    Vector x0 = unit_ball_point(2, 410 + p, 0.6);
    auto opts = options(1e-4);
    auto state = initial_state(enc, x0, opts);
    const double factor = 1.0 - 1.0 / (2.0 * p);
    for (int k = 0; k < 2; ++k) {
      auto next = newton_step(enc, state, opts);
      EXPECT_LE((next.x - factor * state.x).norm(), 1e-8) << "p=" << p << " k=" << k;
      EXPECT_LE((extract_block(*next.be_xxT) - factor * factor * extract_block(*state.be_xxT)).norm(),
                1e-8);
      state = next;
    }
  }
}

TEST(NewtonSolve, DiagonalHalvesEachStep) {
  PolynomialSystem sys(2, 1, 1,
                       {SparseMatrix(2, 2, {{0, 0, 2.0}}), SparseMatrix(2, 2, {{1, 1, 2.0}})});
  Vector x0 = Vector::Constant(2, 0.6) / std::sqrt(2.0);
  auto [state, trace] = newton_solve(sys, x0, 3, options());
  EXPECT_TRUE(trace.halt_reason.empty());
  ASSERT_EQ(trace.records.size(), 4u);
  EXPECT_NEAR(state.x.norm(), 0.125 * x0.norm(), 1e-8);
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    EXPECT_EQ(trace.records[k].k, static_cast<int>(k));
  }
}

TEST(NewtonSolve, ZeroIterationsKeepsInitialState) {
  auto sys = random_system(2, 1, 1, 5);
  Vector x0 = unit_ball_point(2, 6, 0.5);
  auto enc = encode_system(as_mixed(sys));
  auto [state, trace] = newton_solve(enc, x0, 0, options());
  EXPECT_EQ(state.k, 0);
  EXPECT_EQ(trace.records.size(), 1u);
  EXPECT_LE((extract_block(*state.be_xxT) - x0 * x0.transpose()).norm(), 1e-15);
  EXPECT_EQ(state.x, x0);
}

TEST(NewtonSolve, HaltsBelowSigmaFloor) {
  auto sys = random_system(2, 1, 1, 5);
  Vector x0 = unit_ball_point(2, 6, 0.5);
  auto [state, trace] = newton_solve(sys, x0, 3, options(0.99));
  EXPECT_FALSE(trace.halt_reason.empty());
  EXPECT_EQ(trace.records.size(), 1u);
  EXPECT_EQ(state.k, 0);
}

TEST(NewtonStep, LvEquilibriumIsFixed) {
  LvParams p;
  p.v0 = 1.0;
  p.p0 = 1.0;
  auto ms = lv_discretize(p);
  auto run = solve_quantum(ms, lv_constant_guess(p), 1, options());
  ASSERT_TRUE(run.trace.halt_reason.empty());
  EXPECT_LE((run.iterates[1] - run.iterates[0]).norm(), 1e-10);
  EXPECT_LE(run.trace.records[1].residual, 1e-12);
}

TEST(NewtonStep, LvOneStepMatchesClassical) {
  auto p = lv_params();
  auto ms = lv_discretize(p);
  Vector x0 = lv_constant_guess(p);
  auto run = solve_quantum(ms, x0, 1, options());
  auto ct = classical_newton([&](const Vector& x) { return mixed_evaluate(ms, x); },
                             [&](const Vector& x) { return mixed_jacobian(ms, x); }, x0, 1);
  ASSERT_EQ(run.iterates.size(), 2u);
  const Vector& x1 = ct.iterates[1];
  const double l2 = run.lambda * run.lambda;
  EXPECT_LE((l2 * extract_block(*run.state.be_xxT) - x1 * x1.transpose()).norm(), 1e-6);
  EXPECT_LE((run.iterates[1] - x1).norm(), 1e-6);
}

TEST(NewtonSolve, LvTraceMatchesClassical) {
  auto p = lv_params();
  auto ms = lv_discretize(p);
  Vector x0 = lv_constant_guess(p);
  auto run = solve_quantum(ms, x0, 5, options());
  auto ct = classical_newton([&](const Vector& x) { return mixed_evaluate(ms, x); },
                             [&](const Vector& x) { return mixed_jacobian(ms, x); }, x0, 5);
  ASSERT_TRUE(run.trace.halt_reason.empty()) << run.trace.halt_reason;
  ASSERT_EQ(run.iterates.size(), ct.iterates.size());
  for (std::size_t k = 0; k < ct.iterates.size(); ++k) {
    EXPECT_LE((run.iterates[k] - ct.iterates[k]).norm(), 1e-6) << "k=" << k;
    EXPECT_NEAR(run.trace.records[k].residual, ct.residuals[k], 1e-6);
  }
  // Quadratic decay over the last two steps above roundoff.
  const auto& r = run.trace.records;
  int checked = 0;
  for (std::size_t k = r.size() - 1; k >= 1 && checked < 2; --k) {
    if (r[k].residual <= 1e-12) continue;
    EXPECT_LE(r[k].residual, 10.0 * r[k - 1].residual * r[k - 1].residual) << "k=" << k;
    ++checked;
  }
  EXPECT_EQ(checked, 2);
}

TEST(NewtonSolve, GpeTraceMatchesClassical) {
  auto gp = gpe_params();
  auto ms = gpe_discretize(gp);
  Vector x0 = gpe_state(gp, gp.psi_prev);
  auto run = solve_quantum(ms, x0, 5, options(1e-3, ReferenceMode::kInitialIterate));
  auto ct = classical_newton([&](const Vector& x) { return mixed_evaluate(ms, x); },
                             [&](const Vector& x) { return mixed_jacobian(ms, x); }, x0, 5);
  ASSERT_TRUE(run.trace.halt_reason.empty()) << run.trace.halt_reason;
  for (std::size_t k = 0; k < ct.iterates.size(); ++k) {
    EXPECT_LE((run.iterates[k] - ct.iterates[k]).norm(), 1e-6) << "k=" << k;
  }
}

TEST(NewtonSolve, GpeFirstBasisHaltsAtDefaultFloor) {
  auto gp = gpe_params();
  auto ms = gpe_discretize(gp);
  auto run = solve_quantum(ms, gpe_state(gp, gp.psi_prev), 5, options());
  EXPECT_FALSE(run.trace.halt_reason.empty());
  auto low = solve_quantum(ms, gpe_state(gp, gp.psi_prev), 5, options(1e-4));
  EXPECT_TRUE(low.trace.halt_reason.empty());
}

TEST(NewtonSolve, ReferenceModesAgree) {
  auto p = lv_params();
  auto ms = lv_discretize(p);
  Vector x0 = lv_constant_guess(p);
  auto a = solve_quantum(ms, x0, 3, options(1e-3, ReferenceMode::kFirstBasis));
  auto b = solve_quantum(ms, x0, 3, options(1e-3, ReferenceMode::kPreviousIterate));
  auto c = solve_quantum(ms, x0, 3, options(1e-3, ReferenceMode::kInitialIterate));
  for (std::size_t k = 0; k < a.iterates.size(); ++k) {
    EXPECT_LE((a.iterates[k] - b.iterates[k]).norm(), 1e-8);
    EXPECT_LE((a.iterates[k] - c.iterates[k]).norm(), 1e-8);
  }
  EXPECT_NEAR(b.trace.records[2].gamma_k.value(), std::sqrt(b.trace.records[2].x_norm_sq), 1e-9);
}

TEST(NewtonSolve, RankOneAndLedgerGrowth) {
  auto p = lv_params();
  auto run = solve_quantum(lv_discretize(p), lv_constant_guess(p), 4, options());
  for (std::size_t k = 1; k < run.trace.records.size(); ++k) {
    const auto& prev = run.trace.records[k - 1].ledger;
    const auto& cur = run.trace.records[k].ledger;
    EXPECT_GE(cur.oracle_queries, prev.oracle_queries);
    EXPECT_GE(cur.primitive_ops, prev.primitive_ops);
    EXPECT_GE(cur.amplification_cost, prev.amplification_cost);
    EXPECT_GE(cur.term("inversion"), prev.term("inversion"));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(extract_block(*run.state.be_xxT));
  EXPECT_LE(std::abs(es.eigenvalues()(es.eigenvalues().size() - 2)), 1e-7);
  EXPECT_LE(run.state.x_norm_sq, 1.0);
  EXPECT_GT(run.state.sigma_k, 0.0);
  EXPECT_LE(run.state.sigma_k, 1.0);
}

TEST(NewtonSolve, PolynomialBackendTracksExact) {
  auto p = lv_params();
  auto ms = lv_discretize(p);
  Vector x0 = lv_constant_guess(p);
  auto opts = options();
  opts.inversion.backend = InversionBackend::kPolynomial;
  opts.inversion.eps = 1e-6;
  auto poly = solve_quantum(ms, x0, 3, opts);
  auto exact = solve_quantum(ms, x0, 3, options());
  ASSERT_TRUE(poly.trace.halt_reason.empty()) << poly.trace.halt_reason;
  for (std::size_t k = 0; k < exact.iterates.size(); ++k) {
    EXPECT_LE((poly.iterates[k] - exact.iterates[k]).norm(), 1e-3);
  }
}

TEST(TraceCsv, HeaderAndEmptyFields) {
  TraceRecord a{0, 0.5, 0.25, 0.1, 0.6, {}};
  a.ledger.oracle_queries = 3;
  TraceRecord b{1, 0.125, 0.0625, std::nullopt, std::nullopt, {}};
  const std::string csv = trace_csv({a, b});
  EXPECT_EQ(csv,
            "iter,residual,x_norm_sq,sigma_k,gamma_k,oracle_queries,primitive_ops,amplification_cost\n"
            "0,0.5,0.25,0.10000000000000001,0.59999999999999998,3,0,0\n"
            "1,0.125,0.0625,,,0,0,0\n");
}

TEST(InitHeuristic, SingleCandidate) {
  auto sys = random_system(2, 1, 1, 1);
  Vector x = unit_ball_point(2, 2, 0.5);
  auto r = init_heuristic(sys, {x});
  EXPECT_EQ(r.best, x);
  EXPECT_THROW(init_heuristic(sys, {}), InputError);
}

TEST(InitHeuristic, ExactRootSelected) {
  // f₁ = x₁x₂, f₂ = x₁² − x₂² vanish only at the origin; use a root of f on a degenerate axis.
  PolynomialSystem sys(2, 1, 1, {SparseMatrix(2, 2, {{0, 0, 1.0}}), SparseMatrix(2, 2, {{0, 0, 0.5}})});
  Vector root = v2(0.0, 0.7);
  auto r = init_heuristic(sys, {v2(0.5, 0.5), root, v2(0.6, -0.1)});
  EXPECT_EQ(r.best, root);
  EXPECT_NEAR(r.max_residual[1], 0.0, 1e-12);
}

TEST(InitHeuristic, AgreesWithClassicalArgmin) {
  auto sys = random_system(3, 2, 2, 17);
  std::vector<Vector> cands;
  Index best = 0;
  double best_val = 1e300;
  for (int k = 0; k < 10; ++k) {
    cands.push_back(unit_ball_point(3, 500 + k, 0.3 + 0.07 * k));
    const double v = evaluate(sys, cands.back()).cwiseAbs().maxCoeff();
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  auto r = init_heuristic(sys, cands);
  EXPECT_EQ(r.best, cands[best]);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(r.max_residual[k], evaluate(sys, cands[k]).cwiseAbs().maxCoeff(), 1e-9);
  }
}
