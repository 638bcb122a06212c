// Copyright 2026 The qgtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>

#include "qgt/physics/channels.h"
#include "qgt/qstate/pauli.h"

namespace qgt {

void DecayParams::Validate() const {
  if (!(N_1e > 0.0)) throw std::invalid_argument("decay N_1e must be > 0");
  if (!(d > 0.0)) throw std::invalid_argument("decay exponent d must be > 0");
  if (!(A > 0.0 && A <= 0.5)) {
    throw std::invalid_argument("decay amplitude A must be in (0, 0.5]");
  }
}

double DecayParams::Model(double n) const {
  return A * std::exp(-std::pow(n / N_1e, d)) + 0.5;
}

double AttemptRetention(double n, const DecayParams& dp) {
  if (n < 0.0) throw std::invalid_argument("attempt count must be >= 0");
  if (n == 0.0) return 1.0;
  return std::exp(-std::pow(n / dp.N_1e, dp.d));
}

KrausChannel AttemptDephasingChannel(double n, const DecayParams& dp) {
  dp.Validate();
  return DephasingChannel((1.0 - AttemptRetention(n, dp)) / 2.0);
}

KrausChannel DepolarizingChannel(double p_dep) {
  if (p_dep < 0.0 || p_dep > 1.0) {
    throw std::invalid_argument("depolarizing probability outside [0, 1]");
  }
  const double w0 = std::sqrt(1.0 - 0.75 * p_dep);
  const double w = std::sqrt(p_dep / 4.0);
  return KrausChannel({w0 * Mat(gates::I()), w * Mat(gates::X()),
                       w * Mat(gates::Y()), w * Mat(gates::Z())});
}

}  // namespace qgt
