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

#include "qnls/quantum_newton.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <string>

namespace qnls {
namespace {

constexpr double kMinOverlap = 1e-4;
constexpr double kRankOneTol = 1e-7;
constexpr double kUnitBallSlack = 1e-9;

int effective_p(const MixedSystem& ms) { return ms.nonlinear() ? ms.nonlinear()->p() : 1; }

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector basis(Index n, Index k) {
  Vector e = Vector::Zero(n);
  e(k) = 1.0;
  return e;
}

Vector plus_state(Index n) { return Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))); }

/// Columns head ⊗ e_k ⊗ tail for k = 0..n−1.
Matrix isometry(const Vector& head, Index n, const Vector& tail) {
  Matrix v(head.size() * n * tail.size(), n);
  for (Index k = 0; k < n; ++k) v.col(k) = kron(kron(head, basis(n, k)), tail);
  return v;
}

Vector unit_scalar() { return Vector::Ones(1); }

/// I_n ⊗ (xxᵀ)^{⊗count} ⊗ I_n^{trailing}.
BlockEncoding padded_power(const BlockEncoding& be_xxT, Index n, int count, bool trailing) {
  std::vector<BlockEncoding> factors{be_identity(n)};
  for (int j = 0; j < count; ++j) factors.push_back(be_xxT);
  if (trailing) factors.push_back(be_identity(n));
  return be_tensor(factors);
}

void check_overlap(double gamma) {
  if (!(std::abs(gamma) >= kMinOverlap)) {
    throw DegenerateReference("overlap with the reference state is " + std::to_string(gamma) +
                              "; choose a reference closer to the iterate");
  }
}

/// Flips the reference so that γ = refᵀx > 0.
std::pair<Vector, double> orient_reference(const Vector& base, const Vector& x) {
  Vector ref = base;
  double gamma = ref.dot(x);
  if (gamma < 0.0) {
    ref = -ref;
    gamma = -gamma;
  }
  check_overlap(gamma);
  return {ref, gamma};
}

Vector base_reference(ReferenceMode mode, const NewtonState* prev, const Vector& x0) {
  switch (mode) {
    case ReferenceMode::kFirstBasis:
      return basis(x0.size(), 0);
    case ReferenceMode::kInitialIterate:
      if (prev != nullptr) return prev->x_ref;
      [[fallthrough]];
    case ReferenceMode::kPreviousIterate: {
      const Vector& v = prev != nullptr ? prev->x : x0;
      const double nv = v.norm();
      if (nv == 0.0) throw DegenerateReference("reference iterate is zero");
      return v / nv;
    }
  }
  return basis(x0.size(), 0);
}

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Rank-1 readout of α·block = xxᵀ. Returns the eigenpair and the second eigenvalue.
struct RankOne {
  Vector x;
  double second = 0.0;
};

RankOne read_rank_one(const BlockEncoding& be) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric_part(extract_block(be)));
  const Vector& vals = eig.eigenvalues();
  const Index d = vals.size();
  RankOne out;
  out.x = std::sqrt(std::max(vals(d - 1), 0.0)) * eig.eigenvectors().col(d - 1);
  if (d > 1) out.second = std::max(std::abs(vals(d - 2)), std::abs(vals(0)));
  return out;
}

NewtonState make_state(const EncodedSystem& enc, BlockEncoding be_xxT, const Vector& x,
                       const Vector& base_ref, int k, const NewtonOptions& opts,
                       CostLedger prior) {
  auto [ref, gamma] = orient_reference(base_ref, x);
  const BlockEncoding stripped = be_xxT.with_ledger({});
  const SpectralEstimate norm = norm_estimate(stripped, opts.step_eps);
  StepEncodings step = step_encodings(enc, stripped, x, ref, opts.step_eps);
  const SpectralEstimate sigma = min_singular_value(step.jacobian.with_ledger({}), opts.step_eps);

  NewtonState st;
  st.k = k;
  st.x = x;
  st.x_ref = ref;
  st.gamma_k = gamma;
  st.x_norm_sq = norm.value;
  st.sigma_k = sigma.value;
  prior.merge(be_xxT.ledger()).merge(norm.ledger).merge(sigma.ledger);
  st.ledger = std::move(prior);
  st.be_xxT = std::make_shared<const BlockEncoding>(std::move(be_xxT));
  st.encodings = std::make_shared<const StepEncodings>(std::move(step));
  return st;
}

BlockEncoding sandwich_jacobian(const BlockEncoding& be_p, const Vector& x_ref, int p, Index n) {
  const Matrix v_in = isometry(unit_scalar(), n, tensor_power(x_ref, p));
  const Matrix v_out = isometry(kron(plus_state(n), tensor_power(x_ref, p - 1)), n, unit_scalar());
  return be_isometry_sandwich(be_p, v_out, v_in);
}

BlockEncoding sandwich_rhs(const BlockEncoding& be_a, const BlockEncoding& be_xxT,
                           const Vector& x_ref, int p, Index n) {
  const BlockEncoding t = padded_power(be_xxT, n, p, false);
  const BlockEncoding s = be_product(be_product(t, be_a), t);
  const Matrix v_in = isometry(kron(plus_state(n), tensor_power(x_ref, p - 1)), n, unit_scalar());
  const Matrix v_out = isometry(unit_scalar(), n, tensor_power(x_ref, p));
  return be_isometry_sandwich(s, v_out, v_in);
}

BlockEncoding amplified_jacobian(const BlockEncoding& be_p, const Vector& x_ref, int p, Index n,
                                 double eps) {
  const BlockEncoding sw = sandwich_jacobian(be_p, x_ref, p, n);
  return be_transpose(be_amplify(sw, sw.alpha(), eps));
}

BlockEncoding combine(const std::vector<BlockEncoding>& terms) {
  if (terms.size() == 1) return terms.front();
  return be_sum(terms, std::vector<int>(terms.size(), 1));
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

BlockEncoding build_M_blockdiag(const PolynomialSystem& system, double eps) {
  const Index s = system.symmetric_sparsity();
  std::vector<BlockEncoding> slices;
  for (int j = 0; j < system.p(); ++j) slices.push_back(be_from_sparse(md_slice(system, j), s, eps));
  return combine(slices);
}

BlockEncoding build_A_blockdiag(const PolynomialSystem& system, double eps) {
  std::vector<SparseMatrix> halves;
  for (const SparseMatrix& a : system.symmetric()) halves.push_back(a.scaled(0.5));
  return be_from_sparse(block_diagonal(halves), system.symmetric_sparsity(), eps);
}

BlockEncoding build_P(const BlockEncoding& be_m, const BlockEncoding& be_xxT, int p, Index n) {
  if (p < 1) throw InputError("build_P requires p >= 1");
  if (be_xxT.logical_dim() != n) throw InputError("iterate encoding has the wrong dimension");
  const BlockEncoding left = padded_power(be_xxT, n, p - 1, true);
  const BlockEncoding right = padded_power(be_xxT, n, p, false);
  return be_product(be_product(left, be_m), right);
}

BlockEncoding jacobian_sandwich(const BlockEncoding& be_p, const Vector& x_ref, int p, Index n) {
  return sandwich_jacobian(be_p, x_ref, p, n);
}

JacobianEncoding jacobian_be(const PolynomialSystem& system, const BlockEncoding& be_xxT,
                             const Vector& x, const Vector& x_ref, double eps) {
  const double gamma = x_ref.dot(x);
  check_overlap(gamma);
  const BlockEncoding be_p =
      build_P(build_M_blockdiag(system, eps), be_xxT, system.p(), system.n());
  return {amplified_jacobian(be_p, x_ref, system.p(), system.n(), eps), gamma};
}

BlockEncoding rhs_be(const PolynomialSystem& system, const BlockEncoding& be_xxT, const Vector& x,
                     const Vector& x_ref, double eps) {
  check_overlap(x_ref.dot(x));
  return sandwich_rhs(build_A_blockdiag(system, eps), be_xxT, x_ref, system.p(), system.n());
}

SpectralEstimate norm_estimate(const BlockEncoding& be_xxT, double eps) {
  return max_eigenvalue(be_xxT, eps);
}

EncodedSystem encode_system(const MixedSystem& system, double eps) {
  MixedSystem canon = canonicalize(system);
  std::optional<BlockEncoding> m, a, lin;
  if (canon.nonlinear()) {
    m = build_M_blockdiag(*canon.nonlinear(), eps);
    a = build_A_blockdiag(*canon.nonlinear(), eps);
  }
  if (canon.linear().nnz() > 0) {
    const double ell = canon.linear().max_abs();
    lin = be_relabel(be_from_sparse(canon.linear().scaled(1.0 / ell), canon.linear().sparsity(), eps),
                     ell);
  }
  if (!m && !lin) throw InputError("system has neither linear nor nonlinear terms");
  return EncodedSystem{std::move(canon), std::move(m), std::move(a), std::move(lin), eps};
}

StepEncodings step_encodings(const EncodedSystem& enc, const BlockEncoding& be_xxT,
                             const Vector& x, const Vector& x_ref, double eps) {
  const MixedSystem& ms = enc.system;
  const Index n = ms.n();
  const int p = effective_p(ms);
  const double gamma = x_ref.dot(x);
  check_overlap(gamma);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double c = std::pow(gamma, 2 * p - 1) / root_n;

  std::vector<BlockEncoding> jac, rhs;
  if (enc.m_blockdiag) {
    jac.push_back(amplified_jacobian(build_P(*enc.m_blockdiag, be_xxT, p, n), x_ref, p, n, eps));
    rhs.push_back(sandwich_rhs(*enc.a_blockdiag, be_xxT, x_ref, p, n));
  }
  if (enc.linear) {
    const BlockEncoding scaled = be_scale(*enc.linear, c);
    jac.push_back(scaled);
    rhs.push_back(be_product(scaled, be_xxT));
  }
  const double b_norm = ms.constants().norm();
  if (b_norm > 0.0) {
    // b·(x_refᵀx)·xᵀ, then the remaining γ^{2p−2}/√n.
    const BlockEncoding bx =
        be_product(be_relabel(be_from_outer(ms.constants() / b_norm, x_ref), b_norm), be_xxT);
    rhs.push_back(be_scale(bx, std::pow(gamma, 2 * p - 2) / root_n));
  }

  BlockEncoding g = combine(jac);
  g = be_amplify(g, max_amplification(g, g.alpha()), eps);
  return StepEncodings{gamma, std::move(g), combine(rhs)};
}

NewtonState initial_state(const EncodedSystem& enc, const Vector& x0, const NewtonOptions& opts) {
  if (x0.size() != enc.system.n()) throw InputError("initial vector has the wrong dimension");
  if (x0.norm() > 1.0 + 1e-12) throw InputError("initial vector must have norm at most 1");
  const Vector base = base_reference(opts.reference, nullptr, x0);
  return make_state(enc, be_from_vector(x0), x0, base, 0, opts, CostLedger{});
}

NewtonState newton_step(const EncodedSystem& enc, const NewtonState& state,
                        const NewtonOptions& opts) {
  opts.inversion.validate();
  if (!state.encodings || !state.be_xxT) throw InputError("state carries no encodings");
  if (!(state.sigma_k >= opts.inversion.sigma_floor)) {
    throw SingularJacobian("smallest singular value " + std::to_string(state.sigma_k) +
                           " of the scaled Jacobian is below the floor " +
                           std::to_string(opts.inversion.sigma_floor) + " at k = " +
                           std::to_string(state.k));
  }
  if (!(state.x_norm_sq > 0.0)) throw NumericalError("iterate has vanished");
  const StepEncodings& se = *state.encodings;
  const BlockEncoding xxT = state.be_xxT->with_ledger({});
  const double eps = opts.step_eps;

  InversionConfig icfg = opts.inversion;
  icfg.sigma_floor = state.sigma_k / se.jacobian.alpha() * (1.0 - 1e-8);
  icfg.eps = eps;
  const BlockEncoding inverse = sv_invert(se.jacobian, icfg);

  // Δxᵀ, xΔᵀ and ΔΔᵀ; the γ^{2p−1}/√n factors cancel between inverse and RHS.
  const BlockEncoding dx = be_product(inverse, se.rhs);
  const BlockEncoding xd = be_transpose(dx);
  const BlockEncoding dd = be_relabel(be_product(dx, xd), 1.0 / state.x_norm_sq);
  const BlockEncoding sum = be_sum({xxT, dx, xd, dd}, {1, -1, -1, 1});
  BlockEncoding next = be_amplify(sum, max_amplification(sum, sum.alpha()), eps);
  if (next.alpha() > 1.0 + kUnitBallSlack) {
    throw NumericalError("iterate left the unit ball (|x|^2 >= " + std::to_string(next.alpha()) +
                         "); lower the norm target");
  }
  if (next.alpha() != 1.0) next = be_relabel(next, 1.0 / next.alpha());

  const RankOne r1 = read_rank_one(next);
  double tol = kRankOneTol;
  if (opts.inversion.backend == InversionBackend::kPolynomial) tol = std::max(tol, 10.0 * eps);
  if (r1.second > tol) {
    throw NumericalError("updated iterate encoding lost rank one (second eigenvalue " +
                         std::to_string(r1.second) + ")");
  }
  // Orientation from ⟨x_k|(xxᵀ − Δxᵀ)|x_k⟩ = |x_k|²·x_kᵀx_{k+1}.
  const Vector& xk = state.x;
  const double signed_overlap = xk.dot(xk) * xk.dot(xk) - xk.dot(extract_block(dx) * xk);
  Vector x_next = r1.x;
  if ((signed_overlap < 0.0) != (x_next.dot(xk) < 0.0)) x_next = -x_next;

  const Vector base = base_reference(opts.reference, &state, xk);
  return make_state(enc, std::move(next), x_next, base, state.k + 1, opts, state.ledger);
}

NewtonState newton_step(const MixedSystem& system, const NewtonState& state,
                        const NewtonOptions& opts) {
  return newton_step(encode_system(system, opts.step_eps), state, opts);
}

NewtonState newton_step(const PolynomialSystem& system, const NewtonState& state,
                        const NewtonOptions& opts) {
  return newton_step(as_mixed(system), state, opts);
}

std::string trace_csv(const std::vector<TraceRecord>& records) {
  std::string out =
      "iter,residual,x_norm_sq,sigma_k,gamma_k,oracle_queries,primitive_ops,amplification_cost\n";
  for (const TraceRecord& r : records) {
    out += std::to_string(r.k) + "," + format_g(r.residual) + "," + format_g(r.x_norm_sq) + ",";
    if (r.sigma_k) out += format_g(*r.sigma_k);
    out += ",";
    if (r.gamma_k) out += format_g(*r.gamma_k);
    out += "," + std::to_string(r.ledger.oracle_queries) + "," +
           std::to_string(r.ledger.primitive_ops) + "," + format_g(r.ledger.amplification_cost) +
           "\n";
  }
  return out;
}

std::pair<NewtonState, NewtonTrace> newton_solve(const EncodedSystem& enc, const Vector& x0, int T,
                                                 NewtonOptions opts,
                                                 const ResidualFn& residual) {
  if (T < 0) throw InputError("iteration count must be non-negative");
  opts.inversion.validate();
  if (T > 0) opts.step_eps = opts.inversion.eps / (3.0 * T);
  const ResidualFn res = residual ? residual : [&enc](const Vector& x) {
    return mixed_evaluate(enc.system, x).norm();
  };

  NewtonTrace trace;
  auto record = [&](const NewtonState& s) {
    trace.records.push_back({s.k, res(s.x), s.x_norm_sq, s.sigma_k, s.gamma_k, s.ledger});
    trace.iterates.push_back(s.x);
  };
  NewtonState state = initial_state(enc, x0, opts);
  record(state);
  for (int k = 0; k < T; ++k) {
    try {
      state = newton_step(enc, state, opts);
    } catch (const SingularJacobian& e) {
      trace.halt_reason = e.what();
      break;
    } catch (const DegenerateReference& e) {
      trace.halt_reason = e.what();
      break;
    }
    record(state);
  }
  return {std::move(state), std::move(trace)};
}

std::pair<NewtonState, NewtonTrace> newton_solve(const MixedSystem& system, const Vector& x0,
                                                 int T, NewtonOptions opts) {
  const EncodedSystem enc = encode_system(system, opts.step_eps);
  return newton_solve(enc, x0, T, opts,
                      [&system](const Vector& x) { return mixed_evaluate(system, x).norm(); });
}

std::pair<NewtonState, NewtonTrace> newton_solve(const PolynomialSystem& system, const Vector& x0,
                                                 int T, NewtonOptions opts) {
  return newton_solve(as_mixed(system), x0, T, opts);
}

InitResult init_heuristic(const PolynomialSystem& system, const std::vector<Vector>& candidates) {
  if (candidates.empty()) throw InputError("init_heuristic needs at least one candidate");
  const PolynomialSystem canon = canonicalize(system);
  const double ratio = canon.scale_factor() / system.scale_factor();
  const BlockEncoding be_a = build_A_blockdiag(canon);
  const int p = canon.p();
  const Index n = canon.n();

  InitResult out;
  double best = 0.0;
  for (const Vector& x : candidates) {
    if (x.size() != n) throw InputError("candidate has the wrong dimension");
    if (x.norm() > 1.0 + 1e-12) throw InputError("candidates must have norm at most 1");
    const BlockEncoding be_x = be_from_vector(x);
    const BlockEncoding t = padded_power(be_x, n, p, false);
    const BlockEncoding s = be_product(be_product(t, be_a), t);
    // Eigenvalues of s are f_i|x|^{2p}; its square is PSD.
    const double top = max_eigenvalue(be_product(s, s), kNominalEps).value;
    const double norm_sq = norm_estimate(be_x, kNominalEps).value;
    double max_f = 0.0;
    if (norm_sq > 0.0) max_f = std::sqrt(std::max(top, 0.0) / std::pow(norm_sq, 2 * p)) / ratio;
    out.max_residual.push_back(max_f);
    if (out.max_residual.size() == 1 || max_f < best) {
      best = max_f;
      out.best = x;
    }
  }
  return out;
}

QuantumRun solve_quantum(const MixedSystem& system, const Vector& x0, int T,
                         const NewtonOptions& opts, double norm_target) {
  if (!(norm_target > 0.0 && norm_target < 1.0)) throw ConfigError("norm target must lie in (0, 1)");
  if (x0.size() != system.n()) throw InputError("initial vector has the wrong dimension");
  const double x0_norm = x0.norm();
  const double lambda = x0_norm > norm_target ? x0_norm / norm_target : 1.0;
  const MixedSystem scaled = scale_variables(system, lambda);
  EncodedSystem enc = encode_system(scaled, opts.step_eps);
  const double equation_scale = enc.system.scale_factor() / scaled.scale_factor();
  auto [state, trace] = newton_solve(enc, x0 / lambda, T, opts, [&](const Vector& y) {
    return mixed_evaluate(system, lambda * y).norm();
  });
  std::vector<Vector> iterates;
  for (const Vector& y : trace.iterates) iterates.push_back(lambda * y);
  return QuantumRun{std::move(state), std::move(trace), lambda, equation_scale,
                    std::move(iterates), std::move(enc)};
}

}  // namespace qnls
