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

#include "qgt/calib/lookup_table.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qgt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double WrapPhase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double WrapSymmetric(double x) {
  double r = WrapPhase(x);
  if (r > std::numbers::pi) r -= kTwoPi;
  return r;
}

const LookupEntry& LookupTable::At(int n) const {
  auto it = entries.find(n);
  if (it == entries.end()) {
    std::ostringstream msg;
    msg << "lookup table has no entry for n = " << n;
    throw std::out_of_range(msg.str());
  }
  return it->second;
}

double LookupTable::BlockPhase(double delay) const {
  return WrapPhase(omega_bar * BlockDuration(delay));
}

double LookupTable::ResidualBound() const {
  std::vector<double> ph;
  for (double d : allowed_delays) ph.push_back(BlockPhase(d));
  std::sort(ph.begin(), ph.end());
  if (ph.size() < 2) return std::numbers::pi;
  double gap = kTwoPi - ph.back() + ph.front();
  for (size_t i = 1; i < ph.size(); ++i) gap = std::max(gap, ph[i] - ph[i - 1]);
  return 0.5 * gap;
}

void LookupTable::Validate() const {
  if (allowed_delays.empty()) throw std::logic_error("lookup table is empty");
  for (const auto& [n, e] : entries) {
    if (std::find(allowed_delays.begin(), allowed_delays.end(), e.delay) ==
        allowed_delays.end()) {
      throw std::logic_error("lookup entry delay not in the allowed set");
    }
  }
}

std::vector<double> DelayGrid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("delay grid needs step > 0 and hi >= lo");
  }
  std::vector<double> out;
  const long count = std::lround(std::floor((hi - lo) / step + 1e-6));
  for (long i = 0; i <= count; ++i) out.push_back(lo + double(i) * step);
  return out;
}

std::vector<double> FilterNonCoupling(const std::vector<double>& delays,
                                      const std::vector<HyperfineParams>& spins,
                                      int n_pulses, double max_loss) {
  std::vector<double> out;
  for (double tau : delays) {
    bool ok = true;
    for (const HyperfineParams& h : spins) {
      if (ElectronCoherence(DdSequenceUnitary(h, tau, n_pulses)) <
          1.0 - max_loss) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(tau);
  }
  return out;
}

LookupTable CompileLookupTable(const FitResult& phase_rule,
                               const std::vector<double>& allowed_delays,
                               const PrecessionFrequencies& omegas, int n_max,
                               int pulses) {
  const double slope = phase_rule.Get("slope");
  const double icpt = phase_rule.Get("intercept");
  if (!std::isfinite(slope) || !std::isfinite(icpt)) {
    throw std::invalid_argument("phase rule is not finite");
  }
  if (allowed_delays.empty()) {
    throw std::invalid_argument(
        "no admissible interpulse delay left after non-coupling filtering");
  }
  LookupTable t;
  t.allowed_delays = allowed_delays;
  t.omega_bar = 0.5 * (omegas.omega_0 + omegas.omega_1);
  t.pulses = pulses;
  for (int n = 0; n <= n_max; ++n) {
    LookupEntry e;
    e.target_phase = WrapPhase(-(slope * n + icpt));
    double best = 1e300;
    for (double d : allowed_delays) {
      const double r = WrapSymmetric(t.BlockPhase(d) - e.target_phase);
      if (std::abs(r) < best) {
        best = std::abs(r);
        e.delay = d;
        e.residual = r;
        e.realized_phase = t.BlockPhase(d);
      }
    }
    t.entries[n] = e;
  }
  return t;
}

}  // namespace qgt
