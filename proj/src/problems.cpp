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

#include "qnls/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qnls/homogenize.hpp"

namespace qnls {
namespace {

bool has_pin(const GpeParams& p) { return p.g != 0.0; }

/// Neighbours of grid point j under the boundary rule; -1 marks a zero boundary value.
std::pair<Index, Index> neighbours(const GpeParams& p, Index j) {
  Index left = j - 1;
  Index right = j + 1;
  if (p.boundary == GpeBoundary::kPeriodic) {
    left = (j + p.nx - 1) % p.nx;
    right = (j + 1) % p.nx;
  } else if (right == p.nx) {
    right = -1;
  }
  return {left, right};
}

template <typename Get>
double laplacian(const GpeParams& p, Index j, Get value) {
  const auto [l, r] = neighbours(p, j);
  double out = -2.0 * value(j);
  if (l >= 0) out += value(l);
  if (r >= 0) out += value(r);
  return out;
}

Monomial monomial(Index n, double coeff, std::initializer_list<std::pair<Index, int>> powers) {
  Monomial m{coeff, std::vector<int>(n, 0)};
  for (const auto& [v, e] : powers) m.exponents[v] += e;
  return m;
}

}  // namespace

void GpeParams::validate() const {
  if (nx < 3) throw InputError("GPE needs nx >= 3");
  if (!(dt > 0.0) || !(dx > 0.0)) throw InputError("GPE needs dt > 0 and dx > 0");
  if (!std::isfinite(hbar2_over_2m) || !std::isfinite(g)) throw InputError("GPE parameters must be finite");
  if (!potential.empty() && static_cast<Index>(potential.size()) != nx) {
    throw InputError("potential must have nx values");
  }
  if (static_cast<Index>(psi_prev.size()) != nx) throw InputError("psi_prev must have nx values");
}

Index gpe_re_index(const GpeParams& params, Index j) { return (has_pin(params) ? 1 : 0) + j; }

Index gpe_im_index(const GpeParams& params, Index j) {
  return (has_pin(params) ? 1 : 0) + params.nx + j;
}

Vector gpe_state(const GpeParams& params, const std::vector<std::complex<double>>& psi) {
  const Index offset = has_pin(params) ? 1 : 0;
  Vector x(offset + 2 * params.nx);
  if (offset == 1) x(0) = 1.0;
  for (Index j = 0; j < params.nx; ++j) {
    x(gpe_re_index(params, j)) = psi[j].real();
    x(gpe_im_index(params, j)) = psi[j].imag();
  }
  return x;
}

MixedSystem gpe_discretize(const GpeParams& params) {
  params.validate();
  const Index nx = params.nx;
  const bool pin = has_pin(params);
  const Index n = (pin ? 1 : 0) + 2 * nx;
  const double k = params.hbar2_over_2m / (2.0 * params.dx * params.dx);
  const double inv_dt = 1.0 / params.dt;
  const double half_g = 0.5 * params.g;
  auto pot = [&](Index j) { return params.potential.empty() ? 0.0 : params.potential[j]; };
  auto a = [&](Index j) { return params.psi_prev[j].real(); };
  auto b = [&](Index j) { return params.psi_prev[j].imag(); };

  Vector constants = Vector::Zero(n);
  std::vector<Entry> lin;
  std::vector<Polynomial> forms(n);
  if (pin) {
    lin.push_back({0, 0, 1.0});
    constants(0) = -1.0;
  }
  for (Index j = 0; j < nx; ++j) {
    const Index re = gpe_re_index(params, j);
    const Index im = gpe_im_index(params, j);
    const auto [l, r] = neighbours(params, j);
    const double diag = -2.0 * k + 0.5 * pot(j) + half_g * std::norm(params.psi_prev[j]);
    // Real part: (b − w)/Δt + K(Lap u + Lap a) + V(u + a)/2 + g/2(|ψ'|² + |ψ|²)u.
    constants(re) = b(j) * inv_dt + k * laplacian(params, j, a) + 0.5 * pot(j) * a(j);
    lin.push_back({re, im, -inv_dt});
    lin.push_back({re, re, diag});
    // Imaginary part: (u − a)/Δt + K(Lap w + Lap b) + V(w + b)/2 + g/2(|ψ'|² + |ψ|²)w.
    constants(im) = -a(j) * inv_dt + k * laplacian(params, j, b) + 0.5 * pot(j) * b(j);
    lin.push_back({im, re, inv_dt});
    lin.push_back({im, im, diag});
    for (Index nb : {l, r}) {
      if (nb < 0) continue;
      lin.push_back({re, gpe_re_index(params, nb), k});
      lin.push_back({im, gpe_im_index(params, nb), k});
    }
    if (pin) {
      const Index u = re;
      const Index w = im;
      forms[re] = {monomial(n, half_g, {{0, 1}, {u, 3}}), monomial(n, half_g, {{0, 1}, {u, 1}, {w, 2}})};
      forms[im] = {monomial(n, half_g, {{0, 1}, {w, 3}}), monomial(n, half_g, {{0, 1}, {u, 2}, {w, 1}})};
    }
  }
  std::optional<PolynomialSystem> nonlinear;
  if (pin) nonlinear = system_from_forms(forms, n, 2);
  return MixedSystem(n, std::move(constants), SparseMatrix::accumulate(n, n, lin),
                     std::move(nonlinear));
}

void LvParams::validate() const {
  for (double v : {alpha, beta, gamma, delta, dt, v0, p0}) {
    if (!std::isfinite(v)) throw InputError("Lotka-Volterra parameters must be finite");
  }
  if (steps < 1) throw InputError("Lotka-Volterra needs steps >= 1");
}

MixedSystem lv_discretize(const LvParams& params) {
  params.validate();
  const Index s = params.steps;
  const Index n = 2 * s;
  const double dt = params.dt;
  Vector constants = Vector::Zero(n);
  std::vector<Entry> lin;
  std::vector<SparseMatrix> quad;
  auto v = [](Index k) { return k - 1; };
  auto p = [s](Index k) { return s + k - 1; };
  auto cross = [n](Index vi, Index pi, double c) {
    return SparseMatrix(n, n, {{std::min(vi, pi), std::max(vi, pi), c},
                               {std::max(vi, pi), std::min(vi, pi), c}});
  };
  std::vector<SparseMatrix> v_eq(s), p_eq(s);
  for (Index k = 0; k < s; ++k) {
    // V_{k+1} − (1 + αΔt)V_k + βΔt V_k P_k and P_{k+1} − (1 − γΔt)P_k − δΔt V_k P_k.
    lin.push_back({k, v(k + 1), 1.0});
    lin.push_back({s + k, p(k + 1), 1.0});
    if (k == 0) {
      constants(k) = -(1.0 + params.alpha * dt) * params.v0 + params.beta * dt * params.v0 * params.p0;
      constants(s + k) =
          -(1.0 - params.gamma * dt) * params.p0 - params.delta * dt * params.v0 * params.p0;
      v_eq[k] = SparseMatrix::zero(n, n);
      p_eq[k] = SparseMatrix::zero(n, n);
    } else {
      lin.push_back({k, v(k), -(1.0 + params.alpha * dt)});
      lin.push_back({s + k, p(k), -(1.0 - params.gamma * dt)});
      v_eq[k] = cross(v(k), p(k), params.beta * dt);
      p_eq[k] = cross(v(k), p(k), -params.delta * dt);
    }
  }
  for (auto& m : v_eq) quad.push_back(std::move(m));
  for (auto& m : p_eq) quad.push_back(std::move(m));
  std::optional<PolynomialSystem> nonlinear;
  if (s > 1) nonlinear = PolynomialSystem(n, 1, 1, std::move(quad));
  return MixedSystem(n, std::move(constants), SparseMatrix::accumulate(n, n, lin),
                     std::move(nonlinear));
}

Vector lv_constant_guess(const LvParams& params) {
  Vector x(2 * params.steps);
  x.head(params.steps).setConstant(params.v0);
  x.tail(params.steps).setConstant(params.p0);
  return x;
}

PolynomialSystem random_system(Index n, int p, Index s, std::uint64_t seed) {
  if (n < 1 || p < 1 || s < 1) throw InputError("random_system needs n, p, s >= 1");
  const Index dim = tensor_dim(n, p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<Index> order(dim);
  std::vector<SparseMatrix> mats;
  for (Index i = 0; i < n; ++i) {
    std::vector<Entry> entries;
    for (Index layer = 0; layer < s; ++layer) {
      std::iota(order.begin(), order.end(), Index{0});
      std::shuffle(order.begin(), order.end(), rng);
      // Random involution: each shuffled index is either fixed or paired with the next.
      for (Index k = 0; k < dim;) {
        const double v = value(rng);
        if (k + 1 < dim && coin(rng)) {
          entries.push_back({order[k], order[k + 1], v});
          entries.push_back({order[k + 1], order[k], v});
          k += 2;
        } else {
          entries.push_back({order[k], order[k], v});
          k += 1;
        }
      }
    }
    mats.push_back(SparseMatrix::accumulate(dim, dim, entries));
  }
  return canonicalize(PolynomialSystem(n, p, s, std::move(mats)));
}

Vector random_initial(Index n, std::uint64_t seed, double radius) {
  if (n < 1) throw InputError("dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector x(n);
  do {
    for (Index i = 0; i < n; ++i) x(i) = normal(rng);
  } while (x.norm() == 0.0);
  return radius * x / x.norm();
}

}  // namespace qnls
