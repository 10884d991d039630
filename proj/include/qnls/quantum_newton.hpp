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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnls/block_encoding.hpp"
#include "qnls/poly_system.hpp"
#include "qnls/svt.hpp"

namespace qnls {

/// Reference state used for the overlap γ = x_refᵀx.
enum class ReferenceMode {
  kFirstBasis,      ///< e₁, so γ is the first component
  kInitialIterate,  ///< x₀/‖x₀‖ for every step
  kPreviousIterate  ///< x_{k−1}/‖x_{k−1}‖ (x₀ at k = 0)
};

struct NewtonOptions {
  /// sigma_floor halts the run; eps is the total error budget.
  InversionConfig inversion;
  ReferenceMode reference = ReferenceMode::kFirstBasis;
  /// Error used in per-step cost formulas (set by newton_solve to eps/(3T)).
  double step_eps = kNominalEps;
};

/// Encodings of a canonical system that do not depend on the iterate.
struct EncodedSystem {
  MixedSystem system;
  std::optional<BlockEncoding> m_blockdiag;  ///< M/(ps)
  std::optional<BlockEncoding> a_blockdiag;  ///< A/s with blocks A_i/2
  std::optional<BlockEncoding> linear;       ///< L with α = max|L|·s_L
  double eps = kNominalEps;
};

/// Canonically rescales the system and encodes its iterate-independent parts.
EncodedSystem encode_system(const MixedSystem& system, double eps = kNominalEps);

/// Block-diagonal M with blocks M_D^i, encoded with α = ps as a sum over the p slices.
BlockEncoding build_M_blockdiag(const PolynomialSystem& system, double eps = kNominalEps);

/// Block-diagonal A with blocks A_i/2, α = s.
BlockEncoding build_A_blockdiag(const PolynomialSystem& system, double eps = kNominalEps);

/// Σ_i |i⟩⟨i| ⊗ ((xxᵀ)^{⊗p−1} ⊗ ∇f_i xᵀ) with α = ps.
BlockEncoding build_P(const BlockEncoding& be_m, const BlockEncoding& be_xxT, int p, Index n);

/// The U_m U_p sandwich of P: element (i, k) of the block equals
/// γ^{2p−1}(∇f_k)_i/(√n·ps), i.e. the encoded operator is γ^{2p−1}Jᵀ/√n.
BlockEncoding jacobian_sandwich(const BlockEncoding& be_p, const Vector& x_ref, int p, Index n);

struct JacobianEncoding {
  BlockEncoding be;
  double gamma = 0.0;
};

/// γ^{2p−1}J/√n with α = 1 (sandwich, amplification by ps, transpose).
/// x is the sign-resolved iterate behind be_xxT.
JacobianEncoding jacobian_be(const PolynomialSystem& system, const BlockEncoding& be_xxT,
                             const Vector& x, const Vector& x_ref, double eps = kNominalEps);

/// γ^{2p−1}F(x)xᵀ/√n with α = s.
BlockEncoding rhs_be(const PolynomialSystem& system, const BlockEncoding& be_xxT,
                     const Vector& x, const Vector& x_ref, double eps = kNominalEps);

/// |x|² as the largest eigenvalue of the encoded xxᵀ.
SpectralEstimate norm_estimate(const BlockEncoding& be_xxT, double eps);

/// Iterate-dependent encodings of one Newton step.
struct StepEncodings {
  double gamma = 0.0;
  BlockEncoding jacobian;  ///< γ^{2p−1}(L + J_nl)/√n
  BlockEncoding rhs;       ///< γ^{2p−1}F(x)xᵀ/√n
};

StepEncodings step_encodings(const EncodedSystem& enc, const BlockEncoding& be_xxT,
                             const Vector& x, const Vector& x_ref, double eps);

struct NewtonState {
  int k = 0;
  std::shared_ptr<const BlockEncoding> be_xxT;
  /// Sign-resolved iterate read from be_xxT (positive overlap with the reference).
  Vector x;
  Vector x_ref;
  double x_norm_sq = 0.0;
  double sigma_k = 0.0;
  double gamma_k = 0.0;
  /// Cumulative ledger: the merge of every step's ledger.
  CostLedger ledger;
  /// Encodings of the current iterate, reused by the next step.
  std::shared_ptr<const StepEncodings> encodings;
};

/// Encodes x0 and evaluates σ₀, γ₀.
NewtonState initial_state(const EncodedSystem& enc, const Vector& x0, const NewtonOptions& opts);

/// One density-matrix Newton update x_{k+1}x_{k+1}ᵀ = (x − Δ)(x − Δ)ᵀ.
NewtonState newton_step(const EncodedSystem& enc, const NewtonState& state,
                        const NewtonOptions& opts);
NewtonState newton_step(const MixedSystem& system, const NewtonState& state,
                        const NewtonOptions& opts);
NewtonState newton_step(const PolynomialSystem& system, const NewtonState& state,
                        const NewtonOptions& opts);

struct TraceRecord {
  int k = 0;
  double residual = 0.0;
  double x_norm_sq = 0.0;
  std::optional<double> sigma_k;
  std::optional<double> gamma_k;
  CostLedger ledger;
};

struct NewtonTrace {
  std::vector<TraceRecord> records;
  /// Iterate of each record, read from its encoding.
  std::vector<Vector> iterates;
  /// Empty when all requested iterations completed.
  std::string halt_reason;
};

/// CSV with header iter,residual,x_norm_sq,sigma_k,gamma_k,oracle_queries,primitive_ops,
/// amplification_cost; missing sigma/gamma values are left empty.
std::string trace_csv(const std::vector<TraceRecord>& records);

using ResidualFn = std::function<double(const Vector&)>;

/// T Newton steps from x0 (‖x0‖ ≤ 1). Stops early on a singular Jacobian and
/// returns the partial trace. residual defaults to ‖F(x)‖ on the encoded system.
std::pair<NewtonState, NewtonTrace> newton_solve(const EncodedSystem& enc, const Vector& x0, int T,
                                                 NewtonOptions opts,
                                                 const ResidualFn& residual = {});
std::pair<NewtonState, NewtonTrace> newton_solve(const MixedSystem& system, const Vector& x0,
                                                 int T, NewtonOptions opts);
std::pair<NewtonState, NewtonTrace> newton_solve(const PolynomialSystem& system, const Vector& x0,
                                                 int T, NewtonOptions opts);

struct InitResult {
  Vector best;
  std::vector<double> max_residual;
};

/// Scores each candidate by max_i |f_i(x)| read from the largest eigenvalue of
/// the squared block-diagonal operator Σ_i f_i |i⟩⟨i| ⊗ (xxᵀ)^{⊗p}.
InitResult init_heuristic(const PolynomialSystem& system, const std::vector<Vector>& candidates);

/// Quantum solve of a loaded system: x = λy with ‖y₀‖ = norm_target (λ = 1 when
/// ‖x₀‖ ≤ norm_target), equations canonically rescaled; the trace reports the
/// residual of the loaded system at λy.
struct QuantumRun {
  NewtonState state;
  NewtonTrace trace;
  double lambda = 1.0;
  double equation_scale = 1.0;
  /// λ·x_k for every recorded state.
  std::vector<Vector> iterates;
  EncodedSystem encoded;
};

QuantumRun solve_quantum(const MixedSystem& system, const Vector& x0, int T,
                         const NewtonOptions& opts, double norm_target = 0.5);

}  // namespace qnls
