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

#include "qnls/homogenize.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace qnls {

double evaluate_polynomial(const Polynomial& poly, const Vector& x) {
  double value = 0.0;
  for (const Monomial& m : poly) {
    if (static_cast<Index>(m.exponents.size()) != x.size()) {
      throw InputError("monomial variable count mismatch");
    }
    double term = m.coeff;
    for (Index v = 0; v < x.size(); ++v) term *= std::pow(x(v), m.exponents[v]);
    value += term;
  }
  return value;
}

int uniform_degree(const Polynomial& poly) {
  int degree = -2;
  for (const Monomial& m : poly) {
    const int d = std::accumulate(m.exponents.begin(), m.exponents.end(), 0);
    if (degree == -2) {
      degree = d;
    } else if (d != degree) {
      return -1;
    }
  }
  return degree;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  std::map<std::vector<int>, double> terms;
  for (const Monomial& x : a) {
    for (const Monomial& y : b) {
      if (x.exponents.size() != y.exponents.size()) throw InputError("variable count mismatch");
      std::vector<int> e(x.exponents.size());
      for (size_t v = 0; v < e.size(); ++v) e[v] = x.exponents[v] + y.exponents[v];
      terms[e] += x.coeff * y.coeff;
    }
  }
  Polynomial out;
  for (auto& [e, c] : terms) {
    if (c != 0.0) out.push_back({c, e});
  }
  return out;
}

PolynomialSystem system_from_forms(const std::vector<Polynomial>& forms, Index n, int p) {
  if (static_cast<Index>(forms.size()) != n) throw InputError("expected n forms");
  const Index dim = tensor_dim(n, p);
  require_desk_scale(dim, "tensor space n^p");
  std::vector<SparseMatrix> mats;
  Index s = 1;
  for (const Polynomial& form : forms) {
    std::vector<Entry> entries;
    for (const Monomial& m : form) {
      if (static_cast<Index>(m.exponents.size()) != n) throw InputError("monomial variable count");
      std::vector<Index> vars;
      for (Index v = 0; v < n; ++v) {
        if (m.exponents[v] < 0) throw InputError("negative exponent");
        for (int k = 0; k < m.exponents[v]; ++k) vars.push_back(v);
      }
      if (static_cast<int>(vars.size()) != 2 * p) throw InputError("form degree must equal 2p");
      Index row = 0;
      Index col = 0;
      for (int k = 0; k < p; ++k) {
        row = row * n + vars[k];
        col = col * n + vars[p + k];
      }
      entries.push_back({row, col, m.coeff});
      entries.push_back({col, row, m.coeff});
    }
    // ½ zᵀ A z with A[r,c] = A[c,r] = coeff reproduces coeff · monomial.
    mats.push_back(SparseMatrix::accumulate(dim, dim, entries));
    s = std::max(s, mats.back().sparsity());
  }
  return PolynomialSystem(n, p, s, std::move(mats));
}

std::vector<Polynomial> homogenize_odd_forms(const std::vector<Polynomial>& odd_system, Index n) {
  if (odd_system.empty()) throw InputError("empty system");
  int d = -2;
  for (const Polynomial& poly : odd_system) {
    const int e = uniform_degree(poly);
    if (e < 0) throw InputError("equation is not homogeneous");
    if (d == -2) d = e;
    if (e != d) throw InputError("equations have different degrees");
    for (const Monomial& m : poly) {
      if (static_cast<Index>(m.exponents.size()) != n) throw InputError("monomial variable count");
    }
  }
  if (d % 2 == 0) throw InputError("homogenize_odd requires odd degree");

  auto lift = [n](const Monomial& m) {
    Monomial out{m.coeff, m.exponents};
    out.exponents.resize(n + 1, 0);
    return out;
  };
  auto unit = [n](Index v, int power, double coeff) {
    Monomial m{coeff, std::vector<int>(n + 1, 0)};
    m.exponents[v] = power;
    return m;
  };

  std::vector<Polynomial> out;
  const Polynomial m_var{unit(n, 1, 1.0)};
  for (const Polynomial& poly : odd_system) {
    Polynomial lifted;
    for (const Monomial& m : poly) lifted.push_back(lift(m));
    out.push_back(multiply(lifted, m_var));
  }
  Polynomial aux{unit(0, 2, 1.0), unit(n, 2, -1.0)};
  Polynomial norm_sq;
  for (Index v = 0; v <= n; ++v) norm_sq.push_back(unit(v, 2, 1.0));
  for (int k = 0; k < (d - 1) / 2; ++k) aux = multiply(aux, norm_sq);
  out.push_back(aux);
  return out;
}

PolynomialSystem homogenize_odd(const std::vector<Polynomial>& odd_system, Index n) {
  std::vector<Polynomial> forms = homogenize_odd_forms(odd_system, n);
  const Index m = n + 1;
  if (static_cast<Index>(forms.size()) != m) {
    throw InputError("homogenize_odd expects a square system of n equations");
  }
  const int degree = uniform_degree(forms.front());
  return system_from_forms(forms, m, (degree > 0 ? degree : 2) / 2);
}

}  // namespace qnls
