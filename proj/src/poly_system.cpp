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

#include "qnls/poly_system.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qnls {

Index tensor_dim(Index n, int p) {
  if (n <= 0 || p < 0) throw InputError("tensor_dim requires n > 0 and p >= 0");
  Index dim = 1;
  for (int k = 0; k < p; ++k) {
    if (dim > std::numeric_limits<Index>::max() / n) throw DeskScaleError("tensor dimension overflow");
    dim *= n;
  }
  return dim;
}

Vector tensor_power(const Vector& x, int p) {
  if (p < 0) throw InputError("tensor_power requires p >= 0");
  Vector out = Vector::Ones(1);
  for (int k = 0; k < p; ++k) {
    Vector next(out.size() * x.size());
    for (Index a = 0; a < out.size(); ++a) next.segment(a * x.size(), x.size()) = out(a) * x;
    out = std::move(next);
  }
  return out;
}

FactorPermutation::FactorPermutation(int p, Index n, int j) : p_(p), n_(n), j_(j) {
  if (p < 1 || n < 1 || j < 0 || j >= p) throw InputError("invalid factor permutation");
  stride_j_ = tensor_dim(n, p - 1 - j);
}

Index FactorPermutation::apply(Index index) const {
  if (j_ == p_ - 1) return index;
  const Index last = index % n_;
  const Index dj = (index / stride_j_) % n_;
  return index + (last - dj) * stride_j_ + (dj - last);
}

SparseMatrix FactorPermutation::matrix() const {
  const Index dim = tensor_dim(n_, p_);
  std::vector<Entry> entries;
  entries.reserve(dim);
  for (Index r = 0; r < dim; ++r) entries.push_back({apply(r), r, 1.0});
  return SparseMatrix(dim, dim, std::move(entries));
}

PolynomialSystem::PolynomialSystem(Index n, int p, Index sparsity,
                                   std::vector<SparseMatrix> equations, double scale_factor)
    : n_(n), p_(p), sparsity_(sparsity), scale_factor_(scale_factor),
      equations_(std::move(equations)) {
  if (n < 1) throw InputError("polynomial system needs n >= 1");
  if (p < 1) throw InputError("polynomial system needs p >= 1");
  if (sparsity < 0) throw InputError("sparsity must be non-negative");
  if (!(scale_factor > 0.0) || !std::isfinite(scale_factor)) {
    throw InputError("scale factor must be positive");
  }
  dim_ = qnls::tensor_dim(n, p);
  require_desk_scale(dim_, "tensor space n^p");
  if (static_cast<Index>(equations_.size()) != n) {
    throw InputError("expected " + std::to_string(n) + " equations, got " +
                     std::to_string(equations_.size()));
  }
  symmetric_.reserve(equations_.size());
  for (size_t i = 0; i < equations_.size(); ++i) {
    const SparseMatrix& a = equations_[i];
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw InputError("equation " + std::to_string(i) + " matrix must be " +
                       std::to_string(dim_) + " x " + std::to_string(dim_));
    }
    if (a.max_row_nnz() > sparsity) {
      throw InputError("equation " + std::to_string(i) + " exceeds declared sparsity " +
                       std::to_string(sparsity));
    }
    symmetric_.push_back(a.is_symmetric() ? a : a.symmetrized());
  }
}

Index PolynomialSystem::symmetric_sparsity() const {
  Index s = 0;
  for (const SparseMatrix& a : symmetric_) s = std::max(s, a.sparsity());
  return s;
}

namespace {

void check_length(const Vector& x, Index n) {
  if (x.size() != n) {
    throw InputError("vector length " + std::to_string(x.size()) + " does not match n = " +
                     std::to_string(n));
  }
}

void check_equation(const PolynomialSystem& system, Index i) {
  if (i < 0 || i >= system.n()) throw InputError("equation index out of range");
}

}  // namespace

Vector evaluate(const PolynomialSystem& system, const Vector& x) {
  check_length(x, system.n());
  const Vector z = tensor_power(x, system.p());
  Vector f(system.n());
  for (Index i = 0; i < system.n(); ++i) {
    double acc = 0.0;
    for (const Entry& e : system.equations()[i].entries()) acc += z(e.row) * e.value * z(e.col);
    f(i) = 0.5 * acc;
  }
  return f;
}

Matrix gradient_operator(const PolynomialSystem& system, Index i, const Vector& x) {
  check_length(x, system.n());
  check_equation(system, i);
  const Index n = system.n();
  const int p = system.p();
  const Vector y = tensor_power(x, p - 1);
  Matrix d = Matrix::Zero(n, n);
  for (int j = 0; j < p; ++j) {
    const FactorPermutation q(p, n, j);
    for (const Entry& e : system.symmetric()[i].entries()) {
      const Index r = q.apply(e.row);
      const Index c = q.apply(e.col);
      d(r % n, c % n) += y(r / n) * y(c / n) * e.value;
    }
  }
  return d;
}

Vector gradient_md(const PolynomialSystem& system, Index i, const Vector& x) {
  return gradient_operator(system, i, x) * x;
}

Matrix jacobian(const PolynomialSystem& system, const Vector& x) {
  Matrix j(system.n(), system.n());
  for (Index i = 0; i < system.n(); ++i) j.row(i) = gradient_md(system, i, x).transpose();
  return j;
}

double euler_check(const PolynomialSystem& system, const Vector& x) {
  return (jacobian(system, x) * x - 2.0 * system.p() * evaluate(system, x)).norm();
}

SparseMatrix md_operator(const PolynomialSystem& system, Index i) {
  check_equation(system, i);
  std::vector<Entry> all;
  for (int j = 0; j < system.p(); ++j) {
    const FactorPermutation q(system.p(), system.n(), j);
    for (const Entry& e : system.symmetric()[i].entries()) {
      all.push_back({q.apply(e.row), q.apply(e.col), e.value});
    }
  }
  return SparseMatrix::accumulate(system.tensor_dim(), system.tensor_dim(), all);
}

SparseMatrix md_slice(const PolynomialSystem& system, int j) {
  const FactorPermutation q(system.p(), system.n(), j);
  std::vector<SparseMatrix> blocks;
  blocks.reserve(system.n());
  for (const SparseMatrix& a : system.symmetric()) {
    blocks.push_back(permuted(a, [&q](Index k) { return q.apply(k); }));
  }
  return block_diagonal(blocks);
}

double max_equation_norm(const PolynomialSystem& system) {
  double m = 0.0;
  for (const SparseMatrix& a : system.symmetric()) m = std::max(m, a.spectral_norm());
  return m;
}

double jacobian_norm_bound(const PolynomialSystem& system) {
  double acc = 0.0;
  for (const SparseMatrix& a : system.symmetric()) {
    const double t = system.p() * a.spectral_norm();
    acc += t * t;
  }
  return std::sqrt(acc);
}

namespace {

double max_symmetric_entry(const PolynomialSystem& system) {
  double m = 0.0;
  for (const SparseMatrix& a : system.symmetric()) m = std::max(m, a.max_abs());
  return m;
}

double canonical_factor(double jac_bound, double entry_max, Index n, double margin) {
  double c = 1.0;
  const double target = (1.0 - margin) * std::sqrt(static_cast<double>(n));
  if (jac_bound > target) c = std::min(c, target / jac_bound);
  if (entry_max > 1.0) c = std::min(c, 1.0 / entry_max);
  return c;
}

}  // namespace

PolynomialSystem scale_equations(const PolynomialSystem& system, double factor) {
  std::vector<SparseMatrix> scaled;
  scaled.reserve(system.n());
  for (const SparseMatrix& a : system.symmetric()) scaled.push_back(a.scaled(factor));
  Index s = 0;
  for (const SparseMatrix& a : scaled) s = std::max(s, a.sparsity());
  return PolynomialSystem(system.n(), system.p(), std::max(s, Index{1}), std::move(scaled),
                          system.scale_factor() * factor);
}

PolynomialSystem canonicalize(const PolynomialSystem& system, double margin) {
  const double c = canonical_factor(jacobian_norm_bound(system), max_symmetric_entry(system),
                                    system.n(), margin);
  return scale_equations(system, c);
}

MixedSystem::MixedSystem(Index n, Vector constants, SparseMatrix linear,
                         std::optional<PolynomialSystem> nonlinear, double scale_factor)
    : n_(n), constants_(std::move(constants)), linear_(std::move(linear)),
      nonlinear_(std::move(nonlinear)), scale_factor_(scale_factor) {
  if (n < 1) throw InputError("mixed system needs n >= 1");
  if (constants_.size() != n) throw InputError("constant vector length must equal n");
  if (linear_.rows() != n || linear_.cols() != n) throw InputError("linear part must be n x n");
  if (nonlinear_ && nonlinear_->n() != n) throw InputError("nonlinear part must share n");
  if (!(scale_factor > 0.0)) throw InputError("scale factor must be positive");
}

MixedSystem as_mixed(const PolynomialSystem& system) {
  return MixedSystem(system.n(), Vector::Zero(system.n()), SparseMatrix::zero(system.n(), system.n()),
                     system, system.scale_factor());
}

Vector mixed_evaluate(const MixedSystem& ms, const Vector& x) {
  check_length(x, ms.n());
  Vector f = ms.constants() + ms.linear().multiply(x);
  if (ms.nonlinear()) f += evaluate(*ms.nonlinear(), x);
  return f;
}

Matrix mixed_jacobian(const MixedSystem& ms, const Vector& x) {
  check_length(x, ms.n());
  Matrix j = ms.linear().to_dense();
  if (ms.nonlinear()) j += jacobian(*ms.nonlinear(), x);
  return j;
}

MixedSystem canonicalize(const MixedSystem& ms, double margin) {
  const double lin = ms.linear().spectral_norm();
  double jac = lin;
  double entry = 0.0;
  if (ms.nonlinear()) {
    jac += jacobian_norm_bound(*ms.nonlinear());
    entry = max_symmetric_entry(*ms.nonlinear());
  }
  const double c = canonical_factor(jac, entry, ms.n(), margin);
  std::optional<PolynomialSystem> nl;
  if (ms.nonlinear()) nl = scale_equations(*ms.nonlinear(), c);
  return MixedSystem(ms.n(), c * ms.constants(), ms.linear().scaled(c), std::move(nl),
                     ms.scale_factor() * c);
}

MixedSystem scale_variables(const MixedSystem& ms, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("variable scale must be positive");
  std::optional<PolynomialSystem> nl;
  if (ms.nonlinear()) {
    const PolynomialSystem& sys = *ms.nonlinear();
    std::vector<SparseMatrix> scaled;
    const double f = std::pow(lambda, 2 * sys.p());
    for (const SparseMatrix& a : sys.equations()) scaled.push_back(a.scaled(f));
    nl = PolynomialSystem(sys.n(), sys.p(), sys.sparsity(), std::move(scaled), sys.scale_factor());
  }
  return MixedSystem(ms.n(), ms.constants(), ms.linear().scaled(lambda), std::move(nl),
                     ms.scale_factor());
}

namespace {

void check_term(const InhomogeneousTerm& t, Index n) {
  if (t.c.size() != n) throw InputError("term vector length mismatch");
  for (const SparseMatrix& b : t.Bs) {
    if (b.rows() != n || b.cols() != n) throw InputError("term factor must be n x n");
  }
}

}  // namespace

double eval_inhomogeneous(const InhomogeneousPolynomial& g, const Vector& x) {
  double value = 0.0;
  for (const InhomogeneousTerm& t : g.terms) {
    check_term(t, x.size());
    double prod = t.c.dot(x);
    for (const SparseMatrix& b : t.Bs) prod *= x.dot(b.multiply(x));
    value += prod;
  }
  return value;
}

Vector gradient_inhomogeneous(const InhomogeneousPolynomial& g, const Vector& x) {
  Vector grad = Vector::Zero(x.size());
  for (const InhomogeneousTerm& t : g.terms) {
    check_term(t, x.size());
    const size_t m = t.Bs.size();
    std::vector<double> q(m);
    std::vector<Vector> dq(m);
    for (size_t k = 0; k < m; ++k) {
      const Vector bx = t.Bs[k].multiply(x);
      const Vector btx = t.Bs[k].transposed().multiply(x);
      q[k] = x.dot(bx);
      dq[k] = bx + btx;
    }
    double prod = 1.0;
    for (double v : q) prod *= v;
    const double cx = t.c.dot(x);
    grad += prod * t.c;
    for (size_t k = 0; k < m; ++k) {
      double others = 1.0;
      for (size_t l = 0; l < m; ++l) {
        if (l != k) others *= q[l];
      }
      grad += cx * others * dq[k];
    }
  }
  return grad;
}

InhomogeneousSystem::InhomogeneousSystem(Index n, Vector constants,
                                         std::vector<InhomogeneousPolynomial> equations)
    : n_(n), constants_(std::move(constants)), equations_(std::move(equations)) {
  if (n < 1) throw InputError("inhomogeneous system needs n >= 1");
  if (constants_.size() != n) throw InputError("constant vector length must equal n");
  if (static_cast<Index>(equations_.size()) != n) throw InputError("expected n equations");
  for (const InhomogeneousPolynomial& g : equations_) {
    for (const InhomogeneousTerm& t : g.terms) check_term(t, n);
  }
}

int InhomogeneousSystem::max_factors() const {
  size_t m = 0;
  for (const auto& g : equations_) {
    for (const auto& t : g.terms) m = std::max(m, t.Bs.size());
  }
  return static_cast<int>(m);
}

Index InhomogeneousSystem::max_sparsity() const {
  Index s = 0;
  for (const auto& g : equations_) {
    for (const auto& t : g.terms) {
      for (const auto& b : t.Bs) s = std::max(s, b.max_row_nnz());
    }
  }
  return s;
}

Vector inhomogeneous_evaluate(const InhomogeneousSystem& sys, const Vector& x) {
  check_length(x, sys.n());
  Vector f = sys.constants();
  for (Index i = 0; i < sys.n(); ++i) f(i) += eval_inhomogeneous(sys.equations()[i], x);
  return f;
}

Matrix inhomogeneous_jacobian(const InhomogeneousSystem& sys, const Vector& x) {
  check_length(x, sys.n());
  Matrix j(sys.n(), sys.n());
  for (Index i = 0; i < sys.n(); ++i) {
    j.row(i) = gradient_inhomogeneous(sys.equations()[i], x).transpose();
  }
  return j;
}

}  // namespace qnls
