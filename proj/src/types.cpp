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

#include "qnls/types.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace qnls {

namespace {

std::atomic<int>& debug_flag() {
  static std::atomic<int> flag{[] {
    const char* env = std::getenv("QNLS_DEBUG");
    return (env != nullptr && std::strcmp(env, "0") != 0 && env[0] != '\0') ? 1 : 0;
  }()};
  return flag;
}

}  // namespace

void require_desk_scale(Index dim, const std::string& what) {
  if (dim > kDeskScaleCap) {
    throw DeskScaleError(what + " dimension " + std::to_string(dim) +
                         " exceeds desk-scale cap " + std::to_string(kDeskScaleCap));
  }
}

bool debug_checks_enabled() { return debug_flag().load() != 0; }

void set_debug_checks(bool enabled) { debug_flag().store(enabled ? 1 : 0); }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace qnls
