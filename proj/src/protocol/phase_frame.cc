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

#include "qgt/protocol/phase_frame.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgt {

FrameMode FrameModeFor(const NodeParams& node) {
  return node.control_method == ControlMethod::kDdrf ? FrameMode::kContinuous
                                                     : FrameMode::kQuantized;
}

PhaseCorrection ApplyPhaseCorrection(PhaseFrame& frame, int n,
                                     const NodeParams& node,
                                     const LookupTable* table) {
  if (n < 0) throw std::invalid_argument("attempt count must be >= 0");
  PhaseCorrection out;
  if (frame.mode == FrameMode::kContinuous) {
    out.correction = -std::fmod(n * node.phase_per_attempt, 2.0 * std::numbers::pi);
    out.residual = 0.0;
  } else {
    if (!table) {
      throw std::invalid_argument("quantized phase frame needs a lookup table");
    }
    const LookupEntry& e = table->At(n);
    out.correction = e.realized_phase;
    out.residual = e.residual;
    out.delay = e.delay;
  }
  frame.Add(out.correction);
  return out;
}

LookupTable CompileNodeTable(const NodeParams& node, int n_max, double lo,
                             double hi, double step) {
  FitResult rule;
  rule.names = {"slope", "intercept"};
  rule.params = {node.phase_per_attempt, 0.0};
  rule.param_errors = {0.0, 0.0};
  const auto allowed =
      FilterNonCoupling(DelayGrid(lo, hi, step), {node.hyperfine});
  return CompileLookupTable(rule, allowed, node.Omegas(), n_max);
}

}  // namespace qgt
