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

#ifndef QGT_PHYSICS_CHANNELS_H_
#define QGT_PHYSICS_CHANNELS_H_

#include "qgt/qstate/kraus.h"

namespace qgt {

// Fidelity of a stored superposition after n attempts:
// A exp(-(n / N_1e)^d) + 0.5.
struct DecayParams {
  double N_1e = 1.0;
  double d = 1.0;
  double A = 0.5;

  void Validate() const;
  double Model(double n) const;
};

// Off-diagonal retention exp(-(n / N_1e)^d). The preparation contrast 2A is
// not part of it.
double AttemptRetention(double n, const DecayParams& dp);

KrausChannel AttemptDephasingChannel(double n, const DecayParams& dp);

// rho -> (1 - p) rho + p I/2 on one qubit.
KrausChannel DepolarizingChannel(double p_dep);

}  // namespace qgt

#endif  // QGT_PHYSICS_CHANNELS_H_
