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

#ifndef QGT_PHYSICS_HYPERFINE_H_
#define QGT_PHYSICS_HYPERFINE_H_

#include <Eigen/Dense>

namespace qgt {

// H = omega_L I_z + A_par S_z I_z + A_perp S_z I_x with S_z in {0, 1} for
// the electron states {|0>, |1>} and I = sigma / 2. All values in rad/s.
struct HyperfineParams {
  double omega_L = 0.0;
  double A_par = 0.0;
  double A_perp = 0.0;

  void Validate() const;
};

struct PrecessionFrequencies {
  double omega_0 = 0.0;
  double omega_1 = 0.0;
};

PrecessionFrequencies ConditionalPrecessionFrequencies(const HyperfineParams& h);

// Nuclear 2x2 propagator for free evolution of duration t with the electron
// in state `electron`.
Eigen::Matrix2cd BranchPropagator(const HyperfineParams& h, int electron,
                                  double t);

// Electron (x) nuclear propagator for an XY8-ordered train of n_pulses ideal
// instantaneous electron pi pulses in the tau - 2tau - tau pattern. The
// electron is the first tensor factor. n_pulses == 0 evolves freely for
// 2 * tau.
Eigen::Matrix4cd DdSequenceUnitary(const HyperfineParams& h, double tau,
                                   int n_pulses);

// Rotation of a 2x2 unitary up to global phase: angle in [0, pi] and unit
// axis.
struct AxisAngle {
  double angle = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};
AxisAngle ToAxisAngle(const Eigen::Matrix2cd& u);

struct ConditionalGateCheck {
  AxisAngle branch0;
  AxisAngle branch1;
  double axis_dot = 0.0;   // n0 . n1; -1 for an ideal conditional gate
  double overlap = 0.0;    // with the ideal +-pi/2 gate about branch0's axis
};

// Block-diagonal analysis of a DD propagator with an even pulse count.
ConditionalGateCheck AnalyzeConditionalGate(const Eigen::Matrix4cd& u);

// Electron coherence retained after the sequence for an unpolarized nuclear
// spin: |Tr(V0^dag V1)| / 2 with Vi the branch blocks.
double ElectronCoherence(const Eigen::Matrix4cd& u);

}  // namespace qgt

#endif  // QGT_PHYSICS_HYPERFINE_H_
