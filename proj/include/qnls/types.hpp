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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace qnls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest logical dimension handled by dense desk-scale routines.
constexpr Index kDeskScaleCap = 4096;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A dimension exceeds the desk-scale cap.
class DeskScaleError : public InputError {
 public:
  using InputError::InputError;
};

/// Problem-file syntax or semantic failure.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Matrix entries must be scaled into [-1, 1] before encoding.
class RescaleRequired : public Error {
 public:
  using Error::Error;
};

/// Encodings cannot be combined as requested.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Amplification would push the block norm past one.
class AmplificationOverflow : public Error {
 public:
  using Error::Error;
};

/// Configuration values are out of range or unattainable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown during iteration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularJacobian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateReference : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A debug-mode invariant check failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Throws DeskScaleError when dim exceeds kDeskScaleCap.
void require_desk_scale(Index dim, const std::string& what);

/// Debug verification of block encodings; initialised from QNLS_DEBUG.
bool debug_checks_enabled();
void set_debug_checks(bool enabled);

/// Spectral norm by dense SVD.
double spectral_norm(const Matrix& m);

}  // namespace qnls
