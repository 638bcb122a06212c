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

#ifndef QGT_PROTOCOL_NODE_PARAMS_H_
#define QGT_PROTOCOL_NODE_PARAMS_H_

#include <string>

#include "qgt/calib/readout_correction.h"
#include "qgt/physics/channels.h"
#include "qgt/physics/hyperfine.h"
#include "qgt/physics/readout.h"

namespace qgt {

enum class NodeId { kAlice = 0, kBob = 1 };
enum class ControlMethod { kDdrf, kDd };

std::string NodeName(NodeId id);

struct GateDurations {
  double mw_pi = 0.0;
  double mw_pi2 = 0.0;
  double cond_gate = 0.0;    // conditional +-pi/2 data rotation
  double uncond_gate = 0.0;  // unconditional data rotation
  double reset = 0.0;        // communication qubit reset
  double ro_mid_max = 190e-6;  // mid-circuit readout, reported 1 (no stop)
  double ro_mid_stop = 20e-6;  // mid-circuit readout, mean dynamic stop
  double ro_final = 40e-6;     // final destructive readout
};

struct NodeParams {
  NodeId node_id = NodeId::kAlice;
  ControlMethod control_method = ControlMethod::kDdrf;
  HyperfineParams hyperfine;
  DecayParams decay;
  ReadoutModel readout;        // mid-circuit, nondestructive
  ReadoutModel final_readout;  // destructive, after the assisted mapping
  double tau = 0.0;
  double t_reset = 0.0;
  double t = 0.0;
  double min_tau = 0.0;
  double phase_per_attempt = 0.0;
  double init_fidelity_target = 1.0;
  // Depolarizing probability of the communication qubit after the local
  // entangling gate.
  double comm_depolarizing = 0.0;
  MappingParams mapping;
  int n_ro = 1;
  int cond_pulses = 0;  // electron pulses in the conditional gate
  double cond_tau = 0.0;
  GateDurations durations;

  double AttemptDuration() const { return 2.0 * tau + t_reset - t; }
  PrecessionFrequencies Omegas() const {
    return ConditionalPrecessionFrequencies(hyperfine);
  }
  int comm() const;
  int data() const;
  // C_en of the assisted readout at n_ro.
  double MappingContrast() const;
  // Depolarizing probability giving the average init fidelity target.
  double InitDepolarizing() const;
  void Validate() const;
};

NodeParams AliceDefaults();
NodeParams BobDefaults();

}  // namespace qgt

#endif  // QGT_PROTOCOL_NODE_PARAMS_H_
