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

#include "qnls/block_encoding.hpp"

#include <atomic>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qnls {

namespace {

std::atomic<Index> g_materialization_cap{512};

constexpr double kUnitarityTol = 1e-10;
constexpr double kContractionTol = 1e-10;
constexpr double kAmplifyHeadroom = 1e-6;

/// Largest singular value by power iteration on BᵀB (a lower bound).
double power_norm(const Matrix& b) {
  Vector v = Vector::Ones(b.cols()).normalized();
  double norm = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Vector w = b.transpose() * (b * v);
    const double next = std::sqrt(w.norm());
    if (next == 0.0) return 0.0;
    v = w / w.norm();
    if (std::abs(next - norm) <= 1e-14 * next) return next;
    norm = next;
  }
  return norm;
}

void check_contraction(const Matrix& b, const char* what) {
  // sqrt(‖B‖₁‖B‖∞) bounds the spectral norm and is cheap.
  const double bound = std::sqrt(b.cwiseAbs().colwise().sum().maxCoeff() *
                                 b.cwiseAbs().rowwise().sum().maxCoeff());
  if (bound <= 1.0 + kContractionTol) return;
  const double norm =
      (debug_checks_enabled() || b.rows() <= 256) ? spectral_norm(b) : power_norm(b);
  if (norm > 1.0 + kContractionTol) {
    throw CompositionError(std::string(what) + ": block norm " + std::to_string(norm) +
                           " exceeds one");
  }
}

bool all_intended(const std::vector<const BlockEncoding*>& list) {
  if (!debug_checks_enabled()) return false;
  for (const BlockEncoding* be : list) {
    if (!be->intended()) return false;
  }
  return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Completes an isometry to an orthogonal matrix whose leading columns equal it.
Matrix complete_isometry(const Matrix& v) {
  const Index rows = v.rows();
  const Index cols = v.cols();
  if ((v.transpose() * v - Matrix::Identity(cols, cols)).norm() > 1e-10) {
    throw InputError("sandwich map is not an isometry");
  }
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, rows);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < cols; ++k) {
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  }
  q.leftCols(cols) = v;
  return q;
}

void check_same_dim(const BlockEncoding& a, const BlockEncoding& b, const char* what) {
  if (a.logical_dim() != b.logical_dim()) {
    throw InputError(std::string(what) + ": logical dimensions " +
                     std::to_string(a.logical_dim()) + " and " + std::to_string(b.logical_dim()) +
                     " differ");
  }
}

CostLedger step_ledger(const CostLedger& base, const std::string& label, double units) {
  CostLedger out = base;
  out.primitive_ops += 1;
  if (!label.empty()) out.charge(label, units);
  return out;
}

}  // namespace

Index materialization_cap() { return g_materialization_cap.load(); }

void set_materialization_cap(Index cap) { g_materialization_cap.store(std::max<Index>(cap, 2)); }

Matrix unitary_dilation(const Matrix& b) {
  if (b.rows() != b.cols()) throw InputError("dilation requires a square block");
  const Index d = b.rows();
  Matrix u;
  Matrix v;
  Vector s;
  if (d <= 64) {
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  if (d > 0 && s(0) > 1.0 + kContractionTol) {
    throw CompositionError("dilation input is not a contraction (norm " + std::to_string(s(0)) +
                           ")");
  }
  Vector c(d);
  // Singular values within a few ulps of 1 are SVD roundoff of exact ones.
  constexpr double kUnitSlack = 4.0 * std::numeric_limits<double>::epsilon();
  for (Index k = 0; k < d; ++k) {
    c(k) = 1.0 - s(k) <= kUnitSlack ? 0.0 : std::sqrt((1.0 - s(k)) * (1.0 + s(k)));
  }
  Matrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = b;
  out.topRightCorner(d, d) = u * c.asDiagonal() * u.transpose();
  out.bottomLeftCorner(d, d) = v * c.asDiagonal() * v.transpose();
  out.bottomRightCorner(d, d) = -b.transpose();
  return out;
}

double unitarity_defect(const Matrix& u) {
  return (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

BlockEncoding BlockEncoding::from_unitary(Matrix unitary, Index logical_dim, double alpha,
                                          double eps, double cost, CostLedger ledger,
                                          std::optional<Matrix> intended) {
  if (logical_dim <= 0 || unitary.rows() != unitary.cols() || unitary.rows() % logical_dim != 0) {
    throw InputError("unitary dimension must be a multiple of the logical dimension");
  }
  require_desk_scale(logical_dim, "block encoding");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive");
  BlockEncoding be;
  be.block_ = std::make_shared<const Matrix>(unitary.topLeftCorner(logical_dim, logical_dim));
  be.unitary_ = std::make_shared<const Matrix>(std::move(unitary));
  be.intended_ = std::make_shared<const std::optional<Matrix>>(std::move(intended));
  be.alpha_ = alpha;
  be.eps_ = eps;
  be.cost_ = cost;
  be.ledger_ = std::move(ledger);
  be.verify();
  return be;
}

BlockEncoding BlockEncoding::from_block(Matrix block, double alpha, double eps, double cost,
                                        CostLedger ledger, std::optional<Matrix> intended) {
  if (block.rows() != block.cols() || block.rows() == 0) {
    throw InputError("block must be square and non-empty");
  }
  require_desk_scale(block.rows(), "block encoding");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive");
  if (2 * block.rows() <= materialization_cap()) {
    const Index d = block.rows();
    return from_unitary(unitary_dilation(block), d, alpha, eps, cost, std::move(ledger),
                        std::move(intended));
  }
  check_contraction(block, "block encoding");
  BlockEncoding be;
  be.block_ = std::make_shared<const Matrix>(std::move(block));
  be.intended_ = std::make_shared<const std::optional<Matrix>>(std::move(intended));
  be.alpha_ = alpha;
  be.eps_ = eps;
  be.cost_ = cost;
  be.ledger_ = std::move(ledger);
  be.verify();
  return be;
}

Index BlockEncoding::ancilla_dim() const {
  return unitary_ ? unitary_->rows() / block_->rows() : 2;
}

BlockEncoding BlockEncoding::with_ledger(CostLedger ledger) const {
  BlockEncoding out = *this;
  out.ledger_ = std::move(ledger);
  return out;
}

Matrix BlockEncoding::unitary() const { return unitary_ ? *unitary_ : unitary_dilation(*block_); }

void BlockEncoding::verify() const {
  if (!debug_checks_enabled()) return;
  const double defect = unitarity_defect(unitary());
  if (defect > kUnitarityTol) {
    throw InvariantViolation("unitarity defect " + std::to_string(defect) + " exceeds 1e-10");
  }
  if (*intended_) {
    const Matrix& want = **intended_;
    if (want.rows() != block_->rows() || want.cols() != block_->cols()) {
      throw InvariantViolation("intended matrix has the wrong shape");
    }
    const double err = spectral_norm(alpha_ * *block_ - want);
    const double tol = eps_ + 1e-9 * std::max(1.0, alpha_);
    if (err > tol) {
      throw InvariantViolation("encoded block deviates from intended by " + std::to_string(err));
    }
  }
}

Matrix extract_block(const BlockEncoding& be) { return be.alpha() * be.block(); }

BlockEncoding be_identity(Index d) {
  if (d <= 0) throw InputError("identity dimension must be positive");
  CostLedger ledger;
  ledger.primitive_ops = 1;
  std::optional<Matrix> intended;
  if (debug_checks_enabled()) intended = Matrix::Identity(d, d);
  if (d <= materialization_cap()) {
    return BlockEncoding::from_unitary(Matrix::Identity(d, d), d, 1.0, 0.0, 0.0, ledger,
                                       std::move(intended));
  }
  return BlockEncoding::from_block(Matrix::Identity(d, d), 1.0, 0.0, 0.0, ledger,
                                   std::move(intended));
}

BlockEncoding be_scalar(double c, Index d) {
  if (std::abs(c) > 1.0 + 1e-15) throw InputError("scalar encoding requires |c| <= 1");
  c = std::clamp(c, -1.0, 1.0);
  CostLedger ledger;
  ledger.primitive_ops = 1;
  std::optional<Matrix> intended;
  if (debug_checks_enabled()) intended = c * Matrix::Identity(d, d);
  return BlockEncoding::from_block(c * Matrix::Identity(d, d), 1.0, 0.0, 1.0, ledger,
                                   std::move(intended));
}

BlockEncoding be_from_sparse(const SparseMatrix& a, Index s, double eps) {
  if (!a.square()) throw InputError("be_from_sparse requires a square matrix");
  if (a.max_abs() > 1.0) {
    throw RescaleRequired("matrix entry magnitude " + std::to_string(a.max_abs()) +
                          " exceeds 1; rescale first");
  }
  if (s < 1) s = 1;
  if (a.sparsity() > s) {
    throw InputError("matrix has " + std::to_string(a.sparsity()) +
                     " nonzeros in a row or column, more than s = " + std::to_string(s));
  }
  require_desk_scale(a.rows(), "be_from_sparse");
  CostLedger ledger;
  ledger.oracle_queries = 1;
  ledger.primitive_ops = 1;
  const double units = cost::sparse_access(a.rows(), eps);
  ledger.charge("sparse_access", units);
  const Matrix dense = a.to_dense();
  std::optional<Matrix> intended;
  if (debug_checks_enabled()) intended = dense;
  return BlockEncoding::from_block(dense / static_cast<double>(s), static_cast<double>(s), 0.0,
                                   units, ledger, std::move(intended));
}

BlockEncoding be_from_vector(const Vector& x) { return be_from_outer(x, x); }

BlockEncoding be_from_outer(const Vector& u, const Vector& v) {
  if (u.size() != v.size() || u.size() == 0) throw InputError("outer product vectors mismatch");
  if (u.norm() > 1.0 + 1e-12 || v.norm() > 1.0 + 1e-12) {
    throw InputError("state vectors must have norm at most 1");
  }
  CostLedger ledger;
  ledger.primitive_ops = 1;
  const double units = 2.0 * cost::state_prep(u.size());
  ledger.charge("state_prep", units);
  const Matrix block = u * v.transpose();
  std::optional<Matrix> intended;
  if (debug_checks_enabled()) intended = block;
  return BlockEncoding::from_block(block, 1.0, 0.0, units, ledger, std::move(intended));
}

BlockEncoding be_product(const BlockEncoding& left, const BlockEncoding& right) {
  check_same_dim(left, right, "be_product");
  const Index d = left.logical_dim();
  const double alpha = left.alpha() * right.alpha();
  const double eps = left.alpha() * right.eps() + right.alpha() * left.eps();
  const double units = left.cost() + right.cost();
  CostLedger ledger = step_ledger(merge(left.ledger(), right.ledger()), "", 0.0);
  std::optional<Matrix> intended;
  if (all_intended({&left, &right})) intended = *left.intended() * *right.intended();

  const Index al = left.ancilla_dim();
  const Index ar = right.ancilla_dim();
  if (left.has_stored_unitary() && right.has_stored_unitary() &&
      al * ar * d <= materialization_cap()) {
    const Matrix ul = left.unitary();
    const Matrix ur = right.unitary();
    const Index dim = al * ar * d;
    Matrix lt = Matrix::Zero(dim, dim);
    Matrix rt = Matrix::Zero(dim, dim);
    for (Index a = 0; a < al; ++a) {
      for (Index ap = 0; ap < al; ++ap) {
        for (Index b = 0; b < ar; ++b) {
          lt.block((a * ar + b) * d, (ap * ar + b) * d, d, d) = ul.block(a * d, ap * d, d, d);
        }
      }
    }
    for (Index a = 0; a < al; ++a) {
      rt.block(a * ar * d, a * ar * d, ar * d, ar * d) = ur;
    }
    Matrix w = lt * rt;
    return BlockEncoding::from_unitary(std::move(w), d, alpha, eps, units, std::move(ledger),
                                       std::move(intended));
  }
  return BlockEncoding::from_block(left.block() * right.block(), alpha, eps, units,
                                   std::move(ledger), std::move(intended));
}

BlockEncoding be_tensor(const std::vector<BlockEncoding>& factors) {
  if (factors.empty()) throw InputError("be_tensor requires at least one factor");
  if (factors.size() == 1) return factors.front();
  double alpha = 1.0;
  Index d_total = 1;
  Index a_total = 1;
  bool stored = true;
  double units = 1.0;
  CostLedger ledger;
  std::vector<const BlockEncoding*> ptrs;
  for (const BlockEncoding& f : factors) {
    alpha *= f.alpha();
    d_total *= f.logical_dim();
    require_desk_scale(d_total, "be_tensor");
    a_total *= f.ancilla_dim();
    stored = stored && f.has_stored_unitary();
    units += f.cost();
    ledger.merge(f.ledger());
    ptrs.push_back(&f);
  }
  double eps = 0.0;
  for (size_t i = 0; i < factors.size(); ++i) {
    double scale = factors[i].eps();
    for (size_t j = 0; j < factors.size(); ++j) {
      if (j != i) scale *= factors[j].alpha();
    }
    eps += scale;
  }
  ledger = step_ledger(ledger, "", 0.0);
  std::optional<Matrix> intended;
  if (all_intended(ptrs)) {
    Matrix acc = *factors[0].intended();
    for (size_t i = 1; i < factors.size(); ++i) acc = kron(acc, *factors[i].intended());
    intended = std::move(acc);
  }

  if (stored && a_total * d_total <= materialization_cap()) {
    Matrix u = factors[0].unitary();
    for (size_t i = 1; i < factors.size(); ++i) u = kron(u, factors[i].unitary());
    // Kronecker order is (a1 d1)(a2 d2)...; reorder to (a1 a2 ...)(d1 d2 ...).
    const size_t m = factors.size();
    const Index dim = a_total * d_total;
    std::vector<Index> perm(dim);
    std::vector<Index> av(m), dv(m);
    for (Index t = 0; t < dim; ++t) {
      Index anc = t / d_total;
      Index sys = t % d_total;
      for (size_t k = m; k-- > 0;) {
        av[k] = anc % factors[k].ancilla_dim();
        anc /= factors[k].ancilla_dim();
        dv[k] = sys % factors[k].logical_dim();
        sys /= factors[k].logical_dim();
      }
      Index src = 0;
      for (size_t k = 0; k < m; ++k) {
        src = src * factors[k].ancilla_dim() * factors[k].logical_dim() +
              av[k] * factors[k].logical_dim() + dv[k];
      }
      perm[t] = src;
    }
    Matrix w(dim, dim);
    for (Index r = 0; r < dim; ++r) {
      for (Index c = 0; c < dim; ++c) w(r, c) = u(perm[r], perm[c]);
    }
    return BlockEncoding::from_unitary(std::move(w), d_total, alpha, eps, units,
                                       std::move(ledger), std::move(intended));
  }
  Matrix block = factors[0].block();
  for (size_t i = 1; i < factors.size(); ++i) block = kron(block, factors[i].block());
  return BlockEncoding::from_block(std::move(block), alpha, eps, units, std::move(ledger),
                                   std::move(intended));
}

Matrix uniform_householder(Index m) {
  if (m <= 0) throw InputError("LCU term count must be positive");
  Matrix h = Matrix::Identity(m, m);
  if (m == 1) return h;
  Vector u = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  Vector v = -u;
  v(0) += 1.0;
  h -= 2.0 * v * v.transpose() / v.squaredNorm();
  return h;
}

BlockEncoding be_sum(const std::vector<BlockEncoding>& terms_in, const std::vector<int>& signs,
                     bool renormalize) {
  if (terms_in.empty()) throw InputError("be_sum requires at least one term");
  if (signs.size() != terms_in.size()) throw InputError("be_sum needs one sign per term");
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("be_sum signs must be +1 or -1");
  }
  for (const BlockEncoding& t : terms_in) check_same_dim(terms_in.front(), t, "be_sum");

  double alpha_max = 0.0;
  for (const BlockEncoding& t : terms_in) alpha_max = std::max(alpha_max, t.alpha());
  std::vector<BlockEncoding> terms;
  terms.reserve(terms_in.size());
  for (const BlockEncoding& t : terms_in) {
    if (std::abs(t.alpha() - alpha_max) <= 1e-12 * alpha_max) {
      terms.push_back(t);
    } else if (renormalize) {
      terms.push_back(be_renormalize(t, alpha_max));
    } else {
      throw CompositionError("be_sum terms have unequal alpha (" + std::to_string(t.alpha()) +
                             " vs " + std::to_string(alpha_max) + ")");
    }
  }
  const Index m = static_cast<Index>(terms.size());
  const Index d = terms.front().logical_dim();
  const double alpha = static_cast<double>(m) * alpha_max;
  double eps = 0.0;
  double units = cost::lcu(m);
  CostLedger ledger;
  Index a_max = 1;
  bool stored = true;
  std::vector<const BlockEncoding*> ptrs;
  for (const BlockEncoding& t : terms) {
    eps += t.eps();
    units += t.cost();
    ledger.merge(t.ledger());
    a_max = std::max(a_max, t.ancilla_dim());
    stored = stored && t.has_stored_unitary();
    ptrs.push_back(&t);
  }
  ledger = step_ledger(ledger, "lcu", cost::lcu(m));
  std::optional<Matrix> intended;
  if (all_intended(ptrs)) {
    Matrix acc = Matrix::Zero(d, d);
    for (Index j = 0; j < m; ++j) acc += signs[j] * *terms[j].intended();
    intended = std::move(acc);
  }

  if (m == 1 && signs[0] == 1) {
    const BlockEncoding& t = terms.front();
    if (t.has_stored_unitary()) {
      return BlockEncoding::from_unitary(t.unitary(), d, alpha, eps, units, std::move(ledger),
                                         std::move(intended));
    }
    return BlockEncoding::from_block(t.block(), alpha, eps, units, std::move(ledger),
                                     std::move(intended));
  }

  const Index inner = a_max * d;
  if (stored && m * inner <= materialization_cap()) {
    const Index dim = m * inner;
    Matrix select = Matrix::Identity(dim, dim);
    for (Index j = 0; j < m; ++j) {
      const Matrix u = terms[j].unitary();
      select.block(j * inner, j * inner, u.rows(), u.cols()) = signs[j] * u;
      if (u.rows() < inner) {
        select.block(j * inner + u.rows(), j * inner + u.rows(), inner - u.rows(),
                     inner - u.rows()) *= signs[j];
      }
    }
    const Matrix h = uniform_householder(m);
    Matrix prep = kron(h, Matrix::Identity(inner, inner));
    Matrix w = prep.transpose() * select * prep;
    return BlockEncoding::from_unitary(std::move(w), d, alpha, eps, units, std::move(ledger),
                                       std::move(intended));
  }
  Matrix block = Matrix::Zero(d, d);
  for (Index j = 0; j < m; ++j) block += signs[j] * terms[j].block();
  block /= static_cast<double>(m);
  return BlockEncoding::from_block(std::move(block), alpha, eps, units, std::move(ledger),
                                   std::move(intended));
}

double max_amplification(const BlockEncoding& be, double limit) {
  const double norm = spectral_norm(be.block());
  if (norm <= 0.0) return limit;
  return std::max(1.0, std::min(limit, (1.0 - kAmplifyHeadroom) / norm));
}

BlockEncoding be_amplify(const BlockEncoding& be, double factor, double eps) {
  if (!(factor >= 1.0) || !std::isfinite(factor)) {
    throw InputError("amplification factor must be at least 1");
  }
  if (factor == 1.0) return be;
  const double norm = spectral_norm(be.block());
  if (factor * norm > 1.0 - kAmplifyHeadroom) {
    throw AmplificationOverflow("amplified block norm " + std::to_string(factor * norm) +
                                " exceeds 1 - 1e-6");
  }
  const double units = cost::amplification(factor, eps);
  CostLedger ledger = step_ledger(be.ledger(), "amplification", units);
  ledger.amplification_cost += units;
  std::optional<Matrix> intended;
  if (all_intended({&be})) intended = *be.intended();
  return BlockEncoding::from_block(factor * be.block(), be.alpha() / factor, be.eps(),
                                   units * be.cost(), std::move(ledger), std::move(intended));
}

BlockEncoding be_transpose(const BlockEncoding& be) {
  CostLedger ledger = step_ledger(be.ledger(), "", 0.0);
  std::optional<Matrix> intended;
  if (all_intended({&be})) intended = be.intended()->transpose();
  if (be.has_stored_unitary()) {
    return BlockEncoding::from_unitary(be.unitary().transpose(), be.logical_dim(), be.alpha(),
                                       be.eps(), be.cost(), std::move(ledger),
                                       std::move(intended));
  }
  return BlockEncoding::from_block(be.block().transpose(), be.alpha(), be.eps(), be.cost(),
                                   std::move(ledger), std::move(intended));
}

namespace {

BlockEncoding with_alpha(const BlockEncoding& be, double alpha, std::optional<Matrix> intended) {
  if (be.has_stored_unitary()) {
    return BlockEncoding::from_unitary(be.unitary(), be.logical_dim(), alpha, be.eps(), be.cost(),
                                       be.ledger(), std::move(intended));
  }
  return BlockEncoding::from_block(be.block(), alpha, be.eps(), be.cost(), be.ledger(),
                                   std::move(intended));
}

}  // namespace

BlockEncoding be_renormalize(const BlockEncoding& be, double new_alpha) {
  if (!(new_alpha > 0.0)) throw InputError("alpha must be positive");
  if (new_alpha < be.alpha() * (1.0 - 1e-12)) {
    throw CompositionError("renormalization can only increase alpha");
  }
  if (new_alpha <= be.alpha()) return be;
  const double ratio = be.alpha() / new_alpha;
  const BlockEncoding scaled = be_product(be_scalar(ratio, be.logical_dim()), be);
  return with_alpha(scaled, new_alpha, debug_checks_enabled() ? be.intended() : std::nullopt);
}

BlockEncoding be_relabel(const BlockEncoding& be, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InputError("relabel factor must be positive");
  std::optional<Matrix> intended;
  if (all_intended({&be})) intended = factor * *be.intended();
  return with_alpha(be, be.alpha() * factor, std::move(intended));
}

BlockEncoding be_scale(const BlockEncoding& be, double c) {
  return be_product(be_scalar(c, be.logical_dim()), be);
}

BlockEncoding be_isometry_sandwich(const BlockEncoding& be, const Matrix& v_out,
                                   const Matrix& v_in) {
  const Index big = be.logical_dim();
  const Index n = v_in.cols();
  if (v_out.rows() != big || v_in.rows() != big || v_out.cols() != n || n == 0) {
    throw InputError("sandwich isometries do not match the encoding");
  }
  if (big % n != 0) throw InputError("sandwich target dimension must divide the encoded one");
  const double units = be.cost() + 2.0 * cost::state_prep(big);
  CostLedger ledger = step_ledger(be.ledger(), "isometry", 2.0 * cost::state_prep(big));
  std::optional<Matrix> intended;
  if (all_intended({&be})) intended = v_out.transpose() * *be.intended() * v_in;
  if (be.has_stored_unitary()) {
    const Matrix q_out = complete_isometry(v_out);
    const Matrix q_in = complete_isometry(v_in);
    Matrix w = be.unitary();
    const Index a = be.ancilla_dim();
    for (Index k = 0; k < a; ++k) {
      w.middleRows(k * big, big) = q_out.transpose() * w.middleRows(k * big, big);
    }
    for (Index k = 0; k < a; ++k) {
      w.middleCols(k * big, big) = w.middleCols(k * big, big) * q_in;
    }
    return BlockEncoding::from_unitary(std::move(w), n, be.alpha(), be.eps(), units,
                                       std::move(ledger), std::move(intended));
  }
  return BlockEncoding::from_block(v_out.transpose() * be.block() * v_in, be.alpha(), be.eps(),
                                   units, std::move(ledger), std::move(intended));
}

std::string dump_text(const BlockEncoding& be) {
  std::ostringstream out;
  char buf[64];
  out << "# logical_dim " << be.logical_dim() << " ancilla_dim " << be.ancilla_dim();
  std::snprintf(buf, sizeof(buf), " alpha %.16e eps %.16e\n", be.alpha(), be.eps());
  out << buf;
  const Matrix u = be.unitary();
  for (Index r = 0; r < u.rows(); ++r) {
    for (Index c = 0; c < u.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.16e", u(r, c) == 0.0 ? 0.0 : u(r, c));
      out << (c == 0 ? "" : " ") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qnls
