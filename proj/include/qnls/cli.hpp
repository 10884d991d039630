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
#include <vector>

#include "qnls/types.hpp"

namespace qnls {

/// Exit codes of the qnls binary.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitInvariant = 4,
};

/// Runs one command (argv[0] is the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Whitespace-separated reals; '#' starts a comment. Throws ParseError.
Vector parse_vector(const std::string& text);
Vector read_vector_file(const std::string& path);
std::string format_vector(const Vector& x);

}  // namespace qnls
