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

#include "qgt/protocol/node_params.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qgt/calib/lookup_table.h"
#include "qgt/qstate/density_matrix.h"

namespace qgt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUs = 1e-6;
constexpr double kNs = 1e-9;
}  // namespace

std::string NodeName(NodeId id) {
  return id == NodeId::kAlice ? "alice" : "bob";
}

int NodeParams::comm() const {
  return node_id == NodeId::kAlice ? kAliceComm : kBobComm;
}

int NodeParams::data() const {
  return node_id == NodeId::kAlice ? kAliceData : kBobData;
}

double NodeParams::MappingContrast() const {
  return ReadoutCorrection(mapping, n_ro);
}

double NodeParams::InitDepolarizing() const {
  return std::clamp(2.0 * (1.0 - init_fidelity_target), 0.0, 1.0);
}

void NodeParams::Validate() const {
  const std::string who = NodeName(node_id);
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(who + ": " + what);
  };
  hyperfine.Validate();
  decay.Validate();
  readout.Validate();
  final_readout.Validate();
  mapping.Validate();
  if (!(tau > 0.0)) fail("tau must be > 0");
  if (tau < min_tau) {
    std::ostringstream msg;
    msg << "tau = " << tau / kUs << " us is below the minimum "
        << min_tau / kUs << " us";
    fail(msg.str());
  }
  if (!(t_reset > 0.0) || t < 0.0) fail("t_reset must be > 0 and t >= 0");
  if (!(init_fidelity_target >= 0.5 && init_fidelity_target <= 1.0)) {
    fail("init_fidelity_target must be in [0.5, 1]");
  }
  if (!(comm_depolarizing >= 0.0 && comm_depolarizing <= 1.0)) {
    fail("comm_depolarizing must be in [0, 1]");
  }
  if (n_ro < 1) fail("n_ro must be >= 1");
  const GateDurations& g = durations;
  for (double v : {g.mw_pi, g.mw_pi2, g.cond_gate, g.uncond_gate, g.reset,
                   g.ro_mid_max, g.ro_mid_stop, g.ro_final}) {
    if (!(v > 0.0)) fail("gate durations must be > 0");
  }
}

NodeParams AliceDefaults() {
  NodeParams p;
  p.node_id = NodeId::kAlice;
  p.control_method = ControlMethod::kDdrf;
  p.hyperfine = {kTwoPi * 2.021e6, -kTwoPi * 30.0e3, 0.0};
  p.decay = {391.0, 2.4, 0.32};
  p.readout = {0.80, 1.0, ReadoutFlavor::kNondestructive};
  p.final_readout = {0.95, 0.995, ReadoutFlavor::kDestructive};
  p.t_reset = 2.6 * kUs;
  p.t = 0.5 * kUs;
  p.tau = 0.5 * (8.392 * kUs - p.t_reset + p.t);
  p.min_tau = 0.0;
  p.phase_per_attempt = 54.0 * std::numbers::pi / 180.0;
  p.init_fidelity_target = 0.85;
  p.comm_depolarizing = 0.0;
  p.mapping = {0.95, 1442.0, 1.2, 0.0224};
  p.n_ro = OptimalOperatingPoint(p.mapping);
  p.cond_pulses = 28;
  p.cond_tau = 21.8 * kUs;
  p.durations.mw_pi = 215 * kNs;
  p.durations.mw_pi2 = 150 * kNs;
  p.durations.cond_gate = 2.0 * p.cond_pulses * p.cond_tau;
  p.durations.uncond_gate = 600 * kUs;
  p.durations.reset = 5 * kUs;
  return p;
}

NodeParams BobDefaults() {
  NodeParams p;
  p.node_id = NodeId::kBob;
  p.control_method = ControlMethod::kDd;
  p.hyperfine = {kTwoPi * 327.1e3, kTwoPi * 28.2e3, kTwoPi * 11.9e3};
  p.decay = {479.0, 1.1, 0.46};
  p.readout = {0.84, 1.0, ReadoutFlavor::kNondestructive};
  p.final_readout = {0.95, 0.995, ReadoutFlavor::kDestructive};
  p.tau = 3.196 * kUs;
  p.t_reset = 2.5 * kUs;
  p.t = 0.5 * kUs;
  p.min_tau = 3.0 * kUs;
  const PrecessionFrequencies w = p.Omegas();
  p.phase_per_attempt =
      WrapPhase(0.5 * (w.omega_0 + w.omega_1) * p.AttemptDuration());
  p.init_fidelity_target = 0.96;
  p.comm_depolarizing = 0.02;
  p.mapping = {0.98, 3495.0, 0.9, 0.0334};
  p.n_ro = OptimalOperatingPoint(p.mapping);
  p.cond_pulses = 48;
  p.cond_tau = 12.452 * kUs;
  p.durations.mw_pi = 205 * kNs;
  p.durations.mw_pi2 = 135 * kNs;
  p.durations.cond_gate = 2.0 * p.cond_pulses * p.cond_tau;
  p.durations.uncond_gate = 600 * kUs;
  p.durations.reset = 5 * kUs;
  return p;
}

}  // namespace qgt
