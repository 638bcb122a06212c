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

#ifndef QGT_CALIB_LOOKUP_TABLE_H_
#define QGT_CALIB_LOOKUP_TABLE_H_

#include <map>
#include <vector>

#include "qgt/calib/fit.h"
#include "qgt/physics/hyperfine.h"

namespace qgt {

struct LookupEntry {
  double delay = 0.0;           // interpulse delay tau of the rephasing block
  double target_phase = 0.0;    // requested correction, [0, 2pi)
  double realized_phase = 0.0;  // correction produced by the chosen delay
  double residual = 0.0;        // realized - target, wrapped to (-pi, pi]
};

struct LookupTable {
  std::vector<double> allowed_delays;
  std::map<int, LookupEntry> entries;  // attempt count n -> entry
  double omega_bar = 0.0;              // nuclear precession during the block
  int pulses = 8;                      // electron pi pulses per rephasing

  const LookupEntry& At(int n) const;
  // Half the largest phase gap between neighbouring allowed delays.
  double ResidualBound() const;
  double BlockDuration(double delay) const { return 2.0 * pulses * delay; }
  double BlockPhase(double delay) const;
  void Validate() const;
};

// lo, lo + step, ... up to hi (inclusive within 1e-6 step).
std::vector<double> DelayGrid(double lo, double hi, double step);

// Keeps delays at which an XY8-type block of n_pulses retains the electron
// coherence to within max_loss for every listed nuclear spin.
std::vector<double> FilterNonCoupling(const std::vector<double>& delays,
                                      const std::vector<HyperfineParams>& spins,
                                      int n_pulses = 8, double max_loss = 0.01);

// Phase rule: FitResult with "slope" and "intercept" (rad per attempt, rad).
// Entry n corrects the accumulated phase slope n + intercept.
LookupTable CompileLookupTable(const FitResult& phase_rule,
                               const std::vector<double>& allowed_delays,
                               const PrecessionFrequencies& omegas,
                               int n_max, int pulses = 8);

double WrapPhase(double x);       // [0, 2pi)
double WrapSymmetric(double x);   // (-pi, pi]

}  // namespace qgt

#endif  // QGT_CALIB_LOOKUP_TABLE_H_
