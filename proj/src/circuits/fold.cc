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

#include "qgt/circuits/fold.h"

#include <stdexcept>

#include "qgt/calib/lookup_table.h"

namespace qgt {

namespace {

void FoldProgram(NodeProgram& p, std::array<double, kRegisterQubits>& frame,
                 const std::string& circ) {
  std::array<bool, kRegisterQubits> dangling{};
  std::vector<NativeGate> out;
  for (const NativeGate& g : p.gates) {
    switch (g.kind) {
      case GateKind::kPhaseFrame:
        if (g.condition) {
          out.push_back(g);
        } else {
          frame[g.target] = WrapPhase(frame[g.target] + g.angle);
          dangling[g.target] = true;
        }
        continue;
      case GateKind::kMwRotation:
      case GateKind::kRfRotation:
      case GateKind::kCondRotation: {
        NativeGate h = g;
        h.axis = g.axis - frame[g.target];
        dangling[g.target] = false;
        out.push_back(h);
        continue;
      }
      case GateKind::kMeasure:
      case GateKind::kReset:
        frame[g.target] = 0.0;
        dangling[g.target] = false;
        out.push_back(g);
        continue;
      case GateKind::kEntangle: {
        // The heralded state replaces the communication qubit.
        const int c = p.node == NodeId::kAlice ? kAliceComm : kBobComm;
        frame[c] = 0.0;
        dangling[c] = false;
        out.push_back(g);
        continue;
      }
      default:
        out.push_back(g);
    }
  }
  for (int q = 0; q < kRegisterQubits; ++q) {
    if (dangling[q]) {
      throw std::logic_error("circuit " + circ + ": frame update on " +
                             QubitName(q) +
                             " has no downstream physical rotation");
    }
  }
  p.gates = std::move(out);
}

}  // namespace

FoldedCircuit FoldPhaseGates(
    const CompiledCircuit& circ,
    const std::array<double, kRegisterQubits>& initial_frames) {
  FoldedCircuit f;
  f.circuit = circ;
  f.residual_frames = initial_frames;
  FoldProgram(f.circuit.alice, f.residual_frames, circ.name);
  FoldProgram(f.circuit.bob, f.residual_frames, circ.name);
  return f;
}

}  // namespace qgt
