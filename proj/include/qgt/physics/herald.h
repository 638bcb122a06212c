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

#ifndef QGT_PHYSICS_HERALD_H_
#define QGT_PHYSICS_HERALD_H_

#include <optional>

#include "qgt/qstate/density_matrix.h"
#include "qgt/qstate/random.h"

namespace qgt {

// Single-click heralding between two communication qubits. |0> is the
// bright (emitting) state.
struct HeraldModelParams {
  double alpha_A = 0.06;
  double alpha_B = 0.03;
  double p_A = 0.9e-4;
  double p_B = 1.8e-4;
  double phi = 0.0;
  double phi_jitter_std = 0.0;
  double visibility = 1.0;
  // Per detector and detection window.
  double dark_count_prob = 7e-9;
  // Per detector and detection window: clicks not caused by a spin photon
  // (excitation-laser leakage, ambient light).
  double background_click_prob = 0.0;

  void Validate() const;
  double Epsilon() const { return 0.5 * (alpha_A + alpha_B); }
  // |p_A alpha_A - p_B alpha_B|; reported, not enforced.
  double Balance() const;
  double FalseClickProb() const {
    return dark_count_prob + background_click_prob;
  }
};

enum class Detector { kD1 = 0, kD2 = 1 };

struct HeraldEvent {
  Detector detector = Detector::kD1;
  int attempt_index = 1;
  int sign = +1;  // +1 for Psi+, -1 for Psi-
};

inline int DetectorSign(Detector d) { return d == Detector::kD1 ? +1 : -1; }

struct HeraldProbabilities {
  double single_click = 0.0;  // either detector, per attempt
  double per_detector = 0.0;  // single click at D1 (equal to D2)
  // Fraction of single clicks caused by a false click with no spin photon.
  double false_fraction = 0.0;
};

HeraldProbabilities ComputeHeraldProbabilities(const HeraldModelParams& p);

// Heralded state for a spin-photon click, jitter averaged:
// (1 - eps)|Psi(+-)_phi><Psi| with coherence scaled by V exp(-s^2/2), plus
// eps |00><00|.
DensityMatrix SignalHeraldState(const HeraldModelParams& p, Detector d);
// Same with an explicit optical phase and no jitter averaging.
DensityMatrix SignalHeraldStateAtPhase(const HeraldModelParams& p, Detector d,
                                       double phi);
// Product of the two no-detection spin states; used for false clicks.
DensityMatrix FalseClickState(const HeraldModelParams& p);
// Source-averaged heralded state for a click at detector d.
DensityMatrix HeraldedState(const HeraldModelParams& p, Detector d);

struct AttemptResult {
  std::optional<HeraldEvent> event;  // empty: no click or double click
  DensityMatrix state{2};
  bool false_click = false;
};

// One attempt with per-source sampling: spin photons (p_i alpha_i, random
// beam-splitter port) and false clicks on each detector.
AttemptResult HeraldState(const HeraldModelParams& p, RandomStream& rng);

// Detector-averaged fidelity of the heralded state to Psi+ (D1) or Psi- (D2).
double HeraldedFidelity(const HeraldModelParams& p);

// Visibility giving HeraldedFidelity == target; throws if outside [0, 1].
double CalibrateVisibility(HeraldModelParams p, double target_fidelity);

inline constexpr double kHeraldedFidelityTarget = 0.765;
inline constexpr double kDefaultBackgroundClick = 3.45e-7;

// Default sources with the background click rate set and the visibility
// calibrated to kHeraldedFidelityTarget.
HeraldModelParams CalibratedHeraldDefaults();

Vec BellPsi(int sign, double phi = 0.0);  // (|01> + sign e^{i phi}|10>)/sqrt2

}  // namespace qgt

#endif  // QGT_PHYSICS_HERALD_H_
