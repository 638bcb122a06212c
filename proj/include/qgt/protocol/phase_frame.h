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

#ifndef QGT_PROTOCOL_PHASE_FRAME_H_
#define QGT_PROTOCOL_PHASE_FRAME_H_

#include "qgt/calib/lookup_table.h"
#include "qgt/protocol/node_params.h"

namespace qgt {

enum class FrameMode { kContinuous, kQuantized };

struct PhaseFrame {
  double accumulated_phase = 0.0;  // [0, 2pi)
  FrameMode mode = FrameMode::kContinuous;

  void Add(double phase) { accumulated_phase = WrapPhase(accumulated_phase + phase); }
};

FrameMode FrameModeFor(const NodeParams& node);

struct PhaseCorrection {
  double correction = 0.0;  // phase applied to cancel n * phase_per_attempt
  double residual = 0.0;    // realized - requested, (-pi, pi]
  double delay = 0.0;       // rephasing delay (quantized mode)
};

// Continuous: correction -(n phi mod 2pi), residual 0. Quantized: table
// entry for n. Throws std::invalid_argument in quantized mode without table.
// The correction is also added to the frame.
PhaseCorrection ApplyPhaseCorrection(PhaseFrame& frame, int n,
                                     const NodeParams& node,
                                     const LookupTable* table);

// Lookup table for a DD node: phase rule n * phase_per_attempt, admissible
// delays on [lo, hi] with the given step that pass the non-coupling check.
LookupTable CompileNodeTable(const NodeParams& node, int n_max,
                             double lo = 2.8e-6, double hi = 3.2e-6,
                             double step = 4e-9);

}  // namespace qgt

#endif  // QGT_PROTOCOL_PHASE_FRAME_H_
