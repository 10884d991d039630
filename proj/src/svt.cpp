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

#include "qnls/svt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

namespace qnls {

void InversionConfig::validate() const {
  if (!(sigma_floor > 0.0 && sigma_floor < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
}

int OddPolynomial::degree() const {
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k) {
    if (coefficients[k] != 0.0) return k;
  }
  return 0;
}

namespace {

/// Clenshaw evaluation of Σ_{k≤deg} c_k T_k(x).
double clenshaw(const std::vector<double>& c, int deg, double x) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = deg; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

/// Chebyshev coefficients of an odd function on N first-kind nodes.
std::vector<double> chebyshev_coefficients(double sigma, double width, int count, int nodes) {
  std::vector<double> g(2 * nodes, 0.0);
  for (int j = 0; j < nodes; ++j) {
    const double x = std::cos(std::numbers::pi * (j + 0.5) / nodes);
    const double r = x / width;
    g[j] = std::abs(x) < 1e-300 ? 0.0 : sigma * (-std::expm1(-r * r)) / x;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, g);
  std::vector<double> c(count + 1, 0.0);
  for (int k = 1; k <= count; k += 2) {
    const std::complex<double> phase = std::polar(1.0, std::numbers::pi * k / (2.0 * nodes));
    c[k] = 2.0 / nodes * (phase * std::conj(spectrum[k])).real();
  }
  return c;
}

struct Candidate {
  double error = 0.0;
  double sup = 0.0;
};

Candidate measure(const std::vector<double>& c, int deg, double sigma) {
  Candidate out;
  const int grid = std::max(2000, 4 * deg);
  for (int k = 0; k <= grid; ++k) {
    const double x = sigma + (1.0 - sigma) * k / grid;
    out.error = std::max(out.error, std::abs(clenshaw(c, deg, x) - sigma / x));
  }
  const int sup_grid = std::max(4000, 8 * deg);
  for (int k = 0; k <= sup_grid; ++k) {
    const double x = static_cast<double>(k) / sup_grid;
    out.sup = std::max(out.sup, std::abs(clenshaw(c, deg, x)));
  }
  return out;
}

}  // namespace

double OddPolynomial::operator()(double x) const {
  if (coefficients.empty()) return 0.0;
  return clenshaw(coefficients, static_cast<int>(coefficients.size()) - 1, x);
}

double inverse_degree_budget(double sigma, double eps) {
  return std::log(1.0 / (sigma * eps)) / sigma;
}

InversePolynomial build_inverse_poly(double sigma, double eps) {
  InversionConfig{sigma, eps, InversionBackend::kPolynomial}.validate();
  const double budget = inverse_degree_budget(sigma, eps);
  if (budget > kMaxInverseDegree / 2.0) {
    throw ConfigError("inverse polynomial for sigma " + std::to_string(sigma) + " and eps " +
                      std::to_string(eps) + " needs degree beyond 1e5");
  }
  const double width = sigma / std::sqrt(std::log(2.0 / eps));
  const int max_deg = static_cast<int>(std::min<double>(kMaxInverseDegree, 16.0 * budget + 64.0)) | 1;
  int nodes = 1024;
  while (nodes < 4 * max_deg) nodes *= 2;
  const std::vector<double> c = chebyshev_coefficients(sigma, width, max_deg, nodes);

  int lo = -1;
  int hi = 1;
  Candidate best = measure(c, hi, sigma);
  while (best.error > eps) {
    lo = hi;
    if (hi >= max_deg) {
      throw ConfigError("inverse polynomial did not reach eps within degree " +
                        std::to_string(max_deg));
    }
    hi = std::min(max_deg, 2 * hi + 1);
    best = measure(c, hi, sigma);
  }
  while (hi - lo > 2) {
    int mid = (lo + hi) / 2;
    if (mid % 2 == 0) ++mid;
    if (mid >= hi) break;
    const Candidate m = measure(c, mid, sigma);
    if (m.error <= eps) {
      hi = mid;
      best = m;
    } else {
      lo = mid;
    }
  }
  InversePolynomial out;
  out.sigma = sigma;
  out.eps = eps;
  out.max_error = best.error;
  out.scale = std::max(1.0, best.sup * (1.0 + 1e-9));
  out.poly.coefficients.assign(c.begin(), c.begin() + hi + 1);
  for (double& v : out.poly.coefficients) v /= out.scale;
  return out;
}

BlockEncoding sv_invert(const BlockEncoding& be, const InversionConfig& cfg) {
  cfg.validate();
  const double sigma = cfg.sigma_floor;
  const Matrix& b = be.block();
  Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector s = svd.singularValues();
  const Index d = s.size();
  if (d == 0 || s(0) < 0.5 * sigma) {
    throw ConditioningError("no singular value above sigma/2 = " + std::to_string(0.5 * sigma) +
                            "; condition estimate exceeds 1/sigma");
  }
  Vector t = Vector::Zero(d);
  double s_min_kept = s(0);
  for (Index k = 0; k < d; ++k) {
    if (s(k) >= 0.5 * sigma) s_min_kept = std::min(s_min_kept, s(k));
  }
  double approx_err = 0.0;
  if (cfg.backend == InversionBackend::kExact) {
    for (Index k = 0; k < d; ++k) t(k) = s(k) >= 0.5 * sigma ? sigma / s(k) : 0.0;
  } else {
    const InversePolynomial ip = build_inverse_poly(sigma, cfg.eps);
    for (Index k = 0; k < d; ++k) t(k) = ip.scale * ip.poly(s(k));
    approx_err = cfg.eps;
  }
  const double norm = t.cwiseAbs().maxCoeff();
  const double m = std::max(1.0, norm);
  Matrix block = svd.matrixV() * (t / m).asDiagonal() * svd.matrixU().transpose();
  const double alpha = m / (be.alpha() * sigma);
  const double op_scale = 1.0 / (be.alpha() * s_min_kept);
  const double eps_out = be.eps() * op_scale * op_scale + approx_err / (be.alpha() * sigma);

  const double per_use = cost::inversion(sigma, std::min(cfg.eps, 0.5));
  CostLedger ledger = be.ledger();
  ledger.primitive_ops += 1;
  ledger.charge("inversion", per_use);
  std::optional<Matrix> intended;
  if (debug_checks_enabled() && be.intended()) {
    Eigen::BDCSVD<Matrix> isvd(*be.intended(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector is = isvd.singularValues();
    Vector inv = Vector::Zero(is.size());
    const double cut = 0.5 * sigma * be.alpha();
    for (Index k = 0; k < is.size(); ++k) inv(k) = is(k) >= cut ? 1.0 / is(k) : 0.0;
    intended = isvd.matrixV() * inv.asDiagonal() * isvd.matrixU().transpose();
  }
  return BlockEncoding::from_block(std::move(block), alpha, eps_out, per_use * be.cost(),
                                   std::move(ledger), std::move(intended));
}

Matrix sigma_scaled_inverse(const BlockEncoding& inverse, double sigma, double alpha_in) {
  return sigma * alpha_in * extract_block(inverse);
}

namespace {

SpectralEstimate extremal_eigenvalue(const BlockEncoding& be, double eps, bool want_max) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eigenvalue eps must lie in (0, 1)");
  const Matrix& b = be.block();
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw InputError("eigenvalue estimation requires a symmetric block");
  }
  const Matrix sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues();
  if (ev(0) < -1e-9) {
    throw InputError("eigenvalue estimation requires a PSD block (min eigenvalue " +
                     std::to_string(ev(0)) + ")");
  }
  SpectralEstimate out;
  out.value = be.alpha() * (want_max ? ev(ev.size() - 1) : std::max(0.0, ev(0)));
  out.ledger = be.ledger();
  out.ledger.primitive_ops += 1;
  out.ledger.charge("eigen_estimation", cost::eigen_estimation(eps, be.logical_dim(), be.cost()));
  return out;
}

}  // namespace

SpectralEstimate max_eigenvalue(const BlockEncoding& be, double eps) {
  return extremal_eigenvalue(be, eps, true);
}

SpectralEstimate min_eigenvalue(const BlockEncoding& be, double eps) {
  return extremal_eigenvalue(be, eps, false);
}

SpectralEstimate min_singular_value(const BlockEncoding& be, double eps) {
  SpectralEstimate est = min_eigenvalue(be_product(be_transpose(be), be), eps);
  est.value = std::sqrt(std::max(0.0, est.value));
  return est;
}

}  // namespace qnls
