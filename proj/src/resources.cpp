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

#include "qnls/resources.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qnls {
namespace {

struct Shape {
  bool quantum = true;
  bool nonlinear = false;
  bool linear = false;
  bool constant = false;
  int p = 1;
  Index s = 1;
  Index s_linear = 1;
  std::optional<double> k_terms;
};

Shape shape_of(const Problem& problem) {
  Shape sh;
  if (const auto* ps = std::get_if<PolynomialSystem>(&problem)) {
    sh.nonlinear = true;
    sh.p = ps->p();
    sh.s = ps->symmetric_sparsity();
  } else if (const auto* ms = std::get_if<MixedSystem>(&problem)) {
    sh.nonlinear = ms->nonlinear().has_value();
    sh.linear = ms->linear().nnz() > 0;
    sh.constant = ms->constants().norm() > 0.0;
    if (sh.nonlinear) {
      sh.p = ms->nonlinear()->p();
      sh.s = ms->nonlinear()->symmetric_sparsity();
    }
    sh.s_linear = std::max<Index>(1, ms->linear().sparsity());
    sh.s = std::max(sh.s, sh.s_linear);
  } else {
    const auto& is = std::get<InhomogeneousSystem>(problem);
    sh.quantum = false;
    sh.p = std::max(1, is.max_factors());
    sh.s = std::max<Index>(1, is.max_sparsity());
    std::size_t k = 0;
    for (const auto& eq : is.equations()) k = std::max(k, eq.terms.size());
    sh.k_terms = static_cast<double>(k);
  }
  return sh;
}

/// Cost composition of the quantum pipeline, mirroring the block-encoding rules.
class Walk {
 public:
  Walk(const Shape& sh, Index n, double eps, double sigma)
      : sh_(sh), n_(static_cast<double>(n)), e_(eps), sigma_(sigma) {
    big_ = std::pow(n_, sh.p + 1);
    ps_ = static_cast<double>(sh.p) * static_cast<double>(sh.s);
  }

  /// Encodings and estimates attached to an iterate of cost c.
  void assess(double c) {
    // Cached encodings are charged on every use, as in the pipeline.
    double cost_m = 0.0;
    double cost_a = 0.0;
    double cost_l = 0.0;
    if (sh_.nonlinear) {
      for (int j = 0; j < sh_.p; ++j) cost_m += sparse(big_);
      if (sh_.p > 1) cost_m += lcu(sh_.p);
      cost_a = sparse(big_);
    }
    if (sh_.linear) cost_l = sparse(n_);
    double jnl = 0.0;
    double lin = 0.0;
    if (sh_.nonlinear) {
      const double p = sh_.p;
      const double sandwich = cost_m + (2.0 * p - 1.0) * c + 2.0 + isometry(big_);
      jnl = sandwich * amplify(ps_);
    }
    if (sh_.linear) lin = cost_l + 1.0;
    if (sh_.nonlinear && sh_.linear) {
      g_ = (lcu(2) + jnl + lin) * amplify(2.0);
    } else if (sh_.nonlinear) {
      g_ = jnl;
    } else {
      g_ = lin * amplify(static_cast<double>(sh_.s_linear));
    }
    std::vector<double> rhs;
    if (sh_.nonlinear) rhs.push_back(2.0 * (1.0 + sh_.p * c) + cost_a + isometry(big_));
    if (sh_.linear) rhs.push_back(lin + c);
    if (sh_.constant) rhs.push_back(state_prep(n_) + c + 1.0);
    r_ = rhs.size() > 1 ? lcu(static_cast<int>(rhs.size())) : 0.0;
    for (double t : rhs) r_ += t;
    charge("eigen_estimation", cost::eigen_estimation(e_, static_cast<Index>(n_), 2.0 * g_));
    charge("eigen_estimation", cost::eigen_estimation(e_, static_cast<Index>(n_), c));
  }

  double step(double c) {
    charge("inversion", cost::inversion(sigma_, std::min(e_, 0.5)));
    const double inv = g_ * cost::inversion(sigma_, std::min(e_, 0.5));
    const double t2 = inv + r_;
    return (lcu(4) + c + 4.0 * t2) * amplify(4.0 / sigma_);
  }

  double initial() { return state_prep(n_); }

  double model_factor() const {
    double cj = 0.0;
    if (sh_.nonlinear) {
      cj = (2.0 * sh_.p - 1.0) * cost::amplification(ps_, e_);
      if (sh_.linear) cj *= cost::amplification(2.0, e_);
    }
    const double cr = (sh_.nonlinear ? 2.0 * sh_.p : 0.0) + (sh_.linear ? 1.0 : 0.0) +
                      (sh_.constant ? 1.0 : 0.0);
    return cost::amplification(4.0 / sigma_, e_) *
           (1.0 + 4.0 * (cj * cost::inversion(sigma_, std::min(e_, 0.5)) + cr));
  }

  CostLedger ledger;

 private:
  void charge(const std::string& label, double units) {
    ledger.charge(label, units);
    ledger.primitive_ops += 1;
  }
  double sparse(double d) {
    ledger.oracle_queries += 1;
    const double u = cost::sparse_access(static_cast<Index>(d), e_);
    charge("sparse_access", u);
    return u;
  }
  double state_prep(double d) {
    const double u = 2.0 * cost::state_prep(static_cast<Index>(d));
    charge("state_prep", u);
    return u;
  }
  double isometry(double d) {
    const double u = 2.0 * cost::state_prep(static_cast<Index>(d));
    charge("isometry", u);
    return u;
  }
  double lcu(int m) {
    const double u = cost::lcu(m);
    charge("lcu", u);
    return u;
  }
  double amplify(double factor) {
    if (factor <= 1.0) return 1.0;
    const double u = cost::amplification(factor, e_);
    charge("amplification", u);
    ledger.amplification_cost += u;
    return u;
  }

  Shape sh_;
  double n_;
  double e_;
  double sigma_;
  double big_ = 0.0;
  double ps_ = 1.0;
  double g_ = 0.0;
  double r_ = 0.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ResourceReport estimate_resources(const Problem& problem, int T, double eps, double sigma) {
  if (T < 0) throw InputError("iteration count must be non-negative");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  const Shape sh = shape_of(problem);
  ResourceReport r;
  r.kind = kind_name(problem_kind(problem));
  r.n = problem_n(problem);
  r.p = sh.p;
  r.s = sh.s;
  r.iterations = T;
  r.eps = eps;
  r.eps_step = T > 0 ? eps / (3.0 * T) : eps;
  r.sigma = sigma;

  const double n = static_cast<double>(r.n);
  const double p = sh.p;
  const double s = static_cast<double>(sh.s);
  const double ps = p * s;
  r.bound_step_factor = ps * std::log(ps / eps) * (std::log(n) + cost::inversion(sigma, eps));
  r.bound_dominant = std::pow(r.bound_step_factor, T + 1) *
                       (std::log(n) + std::pow(std::log(1.0 / eps), 2.5));

  r.classical_n_cubed = n * n * n;
  if (sh.k_terms) r.classical_gradient = *sh.k_terms * p * p * n * s;
  r.classical_evaluation = std::pow(n, p + 1) * s;
  const double per_iter =
      r.classical_n_cubed + r.classical_gradient.value_or(0.0) + r.classical_evaluation;
  r.classical_total = T * per_iter;

  if (sh.quantum) {
    Walk walk(sh, r.n, r.eps_step, sigma);
    double c = walk.initial();
    walk.assess(c);
    r.iterate_costs.push_back(c);
    for (int k = 0; k < T; ++k) {
      c = walk.step(c);
      walk.assess(c);
      r.iterate_costs.push_back(c);
    }
    r.final_cost = c;
    r.model_step_factor = walk.model_factor();
    r.quantum = walk.ledger;
  }
  return r;
}

std::string format_report(const ResourceReport& r) {
  std::ostringstream out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  const std::string none = "not represented";
  kv("kind", r.kind);
  kv("n", std::to_string(r.n));
  kv("p", std::to_string(r.p));
  kv("s", std::to_string(r.s));
  kv("iterations", std::to_string(r.iterations));
  kv("eps", num(r.eps));
  kv("eps_step", num(r.eps_step));
  kv("sigma", num(r.sigma));
  kv("quantum.supported", r.quantum ? "yes" : "no");
  if (r.quantum) {
    const CostLedger& l = *r.quantum;
    kv("quantum.oracle_queries", std::to_string(l.oracle_queries));
    kv("quantum.primitive_ops", std::to_string(l.primitive_ops));
    kv("quantum.amplification_cost", num(l.amplification_cost));
    for (const char* label : {"amplification", "eigen_estimation", "inversion", "isometry", "lcu",
                              "sparse_access", "state_prep"}) {
      kv(std::string("quantum.term.") + label, num(l.term(label)));
    }
    kv("quantum.final_cost", num(r.final_cost));
    const std::size_t m = r.iterate_costs.size();
    kv("quantum.step_factor", m >= 2 ? num(r.iterate_costs[m - 1] / r.iterate_costs[m - 2]) : "n/a");
    kv("quantum.model_step_factor", num(r.model_step_factor));
  } else {
    for (const char* key :
         {"quantum.oracle_queries", "quantum.primitive_ops", "quantum.amplification_cost",
          "quantum.term.amplification", "quantum.term.eigen_estimation", "quantum.term.inversion",
          "quantum.term.isometry", "quantum.term.lcu", "quantum.term.sparse_access",
          "quantum.term.state_prep", "quantum.final_cost", "quantum.step_factor",
          "quantum.model_step_factor"}) {
      kv(key, none);
    }
  }
  kv("bound.step_factor", num(r.bound_step_factor));
  kv("bound.dominant", num(r.bound_dominant));
  kv("classical.n_cubed", num(r.classical_n_cubed));
  kv("classical.gradient", r.classical_gradient ? num(*r.classical_gradient) : none);
  kv("classical.evaluation", num(r.classical_evaluation));
  kv("classical.per_iteration",
     num(r.classical_n_cubed + r.classical_gradient.value_or(0.0) + r.classical_evaluation));
  kv("classical.total", num(r.classical_total));
  return out.str();
}

}  // namespace qnls
