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

#include "qgt/protocol/entanglement.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgt/physics/channels.h"
#include "qgt/qstate/kraus.h"
#include "qgt/qstate/pauli.h"

namespace qgt {

double LoopSuccessProbability(double q, int n_max) {
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  return -std::expm1(n_max * std::log1p(-q));
}

int SampleSuccessAttempt(double q, int n_max, RandomStream& rng) {
  if (q >= 1.0) return 1;
  const double p = LoopSuccessProbability(q, n_max);
  if (p <= 0.0) throw std::invalid_argument("click probability is zero");
  const double u = rng.Uniform();
  const int n = static_cast<int>(std::ceil(std::log1p(-u * p) / std::log1p(-q)));
  return std::clamp(n, 1, n_max);
}

long SampleTimeoutRounds(double q, int n_max, RandomStream& rng) {
  const double p = LoopSuccessProbability(q, n_max);
  if (p <= 0.0) throw std::invalid_argument("click probability is zero");
  if (p >= 1.0) return 0;
  const double u = 1.0 - rng.Uniform();  // (0, 1]
  return static_cast<long>(std::floor(std::log(u) / std::log1p(-p)));
}

void ApplyAttemptEvolution(DensityMatrix& reg, int n, const NodeParams& a,
                           const NodeParams& b, bool dephasing) {
  for (const NodeParams* p : {&a, &b}) {
    if (dephasing) DephaseInPlace(reg, p->data(), AttemptRetention(n, p->decay));
    Apply1(reg, gates::Rz(n * p->phase_per_attempt), p->data());
  }
}

void ReplaceCommQubits(DensityMatrix& reg, const DensityMatrix& pair) {
  if (reg.num_qubits() != kRegisterQubits || pair.num_qubits() != 2) {
    throw StateError("comm replacement needs a 4-qubit register and a pair");
  }
  const int keep[2] = {kAliceData, kBobData};
  const DensityMatrix data = PartialTrace(reg, keep);
  // Register index bits: Ad Ac Bc Bd; data index bits: Ad Bd; pair: Ac Bc.
  Mat out = Mat::Zero(16, 16);
  auto split = [](int i, int* d, int* c) {
    *d = ((i >> 3) & 1) << 1 | (i & 1);
    *c = ((i >> 2) & 1) << 1 | ((i >> 1) & 1);
  };
  for (int r = 0; r < 16; ++r) {
    int dr, cr;
    split(r, &dr, &cr);
    for (int c = 0; c < 16; ++c) {
      int dc, cc;
      split(c, &dc, &cc);
      out(r, c) = data(dr, dc) * pair(cr, cc);
    }
  }
  reg.mutable_matrix() = std::move(out);
}

LoopResult RunEntanglementLoop(const NodeParams& a, const NodeParams& b,
                               const HeraldModelParams& h, int n_max,
                               RandomStream& rng, DensityMatrix* reg,
                               LoopSampling sampling, bool dephasing) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  LoopResult out;
  if (sampling == LoopSampling::kPerAttempt) {
    for (int n = 1; n <= n_max; ++n) {
      AttemptResult at = HeraldState(h, rng);
      if (at.event) {
        out.attempts = n;
        out.event = at.event;
        out.event->attempt_index = n;
        out.comm_state = at.state;
        out.false_click = at.false_click;
        break;
      }
    }
  } else {
    const HeraldProbabilities hp = ComputeHeraldProbabilities(h);
    const int64_t n = rng.GeometricTrials(hp.single_click, n_max);
    if (n > 0) {
      HeraldEvent ev;
      ev.detector = rng.Uniform() < 0.5 ? Detector::kD1 : Detector::kD2;
      ev.sign = DetectorSign(ev.detector);
      ev.attempt_index = static_cast<int>(n);
      out.attempts = static_cast<int>(n);
      out.event = ev;
      out.false_click = rng.Uniform() < hp.false_fraction;
      if (out.false_click) {
        out.comm_state = FalseClickState(h);
      } else {
        const double phi = h.phi + h.phi_jitter_std * rng.Normal();
        out.comm_state = SignalHeraldStateAtPhase(h, ev.detector, phi);
      }
    }
  }
  if (!out.event) {
    out.timeout = true;
    out.attempts = n_max;
  }
  out.data_phases = {out.attempts * a.phase_per_attempt,
                     out.attempts * b.phase_per_attempt};
  if (reg) {
    ApplyAttemptEvolution(*reg, out.attempts, a, b, dephasing);
    if (out.event) ReplaceCommQubits(*reg, out.comm_state);
  }
  return out;
}

}  // namespace qgt
