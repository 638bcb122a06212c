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

#ifndef QGT_CIRCUITS_FOLD_H_
#define QGT_CIRCUITS_FOLD_H_

#include <array>

#include "qgt/circuits/native_gate.h"

namespace qgt {

struct FoldedCircuit {
  CompiledCircuit circuit;
  // Frame left on each register qubit at the end; the folded circuit equals
  // the original followed by Rz(frame) on each qubit.
  std::array<double, kRegisterQubits> residual_frames{};
};

// Absorbs unconditional phase-frame updates into the axes of later physical
// rotations. initial_frames seeds the frame of each qubit. Conditional frame
// updates are left in place for the executor. Throws std::logic_error when
// an update has no later physical gate, measurement or reset on its qubit.
FoldedCircuit FoldPhaseGates(
    const CompiledCircuit& circ,
    const std::array<double, kRegisterQubits>& initial_frames = {});

}  // namespace qgt

#endif  // QGT_CIRCUITS_FOLD_H_
