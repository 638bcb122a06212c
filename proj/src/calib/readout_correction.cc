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

#include "qgt/calib/readout_correction.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgt {

void MappingParams::Validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("mapping delta must be in (0, 1]");
  }
  if (!(N_0 > 0.0)) throw std::invalid_argument("mapping N_0 must be > 0");
  if (!(d > 0.0)) throw std::invalid_argument("mapping d must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("mapping beta must be > 0");
}

double MappingParams::Contrast(double n) const {
  return delta * std::exp(-std::pow(n / N_0, d)) * std::sin(beta * n);
}

MappingParams MappingFromFit(const FitResult& fit) {
  MappingParams p;
  p.delta = fit.Get("delta");
  p.N_0 = fit.Get("N_0");
  p.d = fit.Get("d");
  p.beta = fit.Get("beta");
  return p;
}

double ReadoutCorrection(const MappingParams& p, int n_ro) {
  p.Validate();
  const double c = p.Contrast(n_ro);
  if (!(c > 0.0)) {
    std::ostringstream msg;
    msg << "invalid readout operating point: C_en = " << c << " at N_RO = "
        << n_ro;
    throw std::domain_error(msg.str());
  }
  return c;
}

double ReadoutCorrection(const FitResult& fit, int n_ro) {
  return ReadoutCorrection(MappingFromFit(fit), n_ro);
}

int OptimalOperatingPoint(const MappingParams& p, int n_max) {
  p.Validate();
  int best = 1;
  for (int n = 2; n <= n_max; ++n) {
    if (p.Contrast(n) > p.Contrast(best)) best = n;
  }
  return best;
}

}  // namespace qgt
