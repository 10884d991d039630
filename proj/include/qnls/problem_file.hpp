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

#include <iosfwd>
#include <string>
#include <variant>

#include "qnls/poly_system.hpp"

namespace qnls {

enum class ProblemKind { kHomogeneous, kMixed, kInhomogeneous };

using Problem = std::variant<PolynomialSystem, MixedSystem, InhomogeneousSystem>;

ProblemKind problem_kind(const Problem& problem);
const char* kind_name(ProblemKind kind);
Index problem_n(const Problem& problem);

/// Parses the line-oriented problem format; throws ParseError with a line number.
Problem parse_problem(std::istream& in);
Problem parse_problem(const std::string& text);
Problem read_problem_file(const std::string& path);

/// Serializes with 17 significant digits so that parse followed by write is bit-identical.
std::string write_problem(const Problem& problem);

/// Writes to a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Formats a double with 17 significant digits.
std::string format_double(double value);

}  // namespace qnls
