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

#include <vector>

#include "qnls/poly_system.hpp"

namespace qnls {

/// coeff · Π_v x_v^{exponents[v]}.
struct Monomial {
  double coeff;
  std::vector<int> exponents;
};

using Polynomial = std::vector<Monomial>;

double evaluate_polynomial(const Polynomial& poly, const Vector& x);

/// Total degree of every monomial, or -1 when degrees differ.
int uniform_degree(const Polynomial& poly);

/// Product of two polynomials over the same variables, like terms merged.
Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Builds the PolynomialSystem whose f_i equal the given degree-2p forms.
/// Each monomial is split into a row and a column multi-index of p factors.
PolynomialSystem system_from_forms(const std::vector<Polynomial>& forms, Index n, int p);

/// Homogenizes a system of uniform odd degree d over n variables into an
/// even-degree system over n + 1 variables (the new variable m is last):
/// every equation is multiplied by m, and x₁² − m² = 0 is appended after
/// lifting by (Σ x² + m²)^{(d−1)/2}.
PolynomialSystem homogenize_odd(const std::vector<Polynomial>& odd_system, Index n);

/// The same construction returned as monomial lists (n + 1 forms).
std::vector<Polynomial> homogenize_odd_forms(const std::vector<Polynomial>& odd_system, Index n);

}  // namespace qnls
