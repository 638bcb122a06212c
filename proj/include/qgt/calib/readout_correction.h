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

#ifndef QGT_CALIB_READOUT_CORRECTION_H_
#define QGT_CALIB_READOUT_CORRECTION_H_

#include "qgt/calib/fit.h"

namespace qgt {

// Damped-oscillation model of the nuclear-to-electron mapping contrast.
struct MappingParams {
  double delta = 1.0;
  double N_0 = 1e300;
  double d = 1.0;
  double beta = 0.0;

  void Validate() const;
  // delta exp(-(n / N_0)^d) sin(beta n).
  double Contrast(double n) const;
};

MappingParams MappingFromFit(const FitResult& fit);

// C_en at N_RO; throws std::domain_error when C_en <= 0.
double ReadoutCorrection(const MappingParams& p, int n_ro);
double ReadoutCorrection(const FitResult& fit, int n_ro);

// Integer N_RO in [1, n_max] that maximizes C_en.
int OptimalOperatingPoint(const MappingParams& p, int n_max = 2000);

}  // namespace qgt

#endif  // QGT_CALIB_READOUT_CORRECTION_H_
