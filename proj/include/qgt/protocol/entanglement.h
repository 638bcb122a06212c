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

#ifndef QGT_PROTOCOL_ENTANGLEMENT_H_
#define QGT_PROTOCOL_ENTANGLEMENT_H_

#include <array>
#include <optional>

#include "qgt/physics/herald.h"
#include "qgt/protocol/node_params.h"
#include "qgt/qstate/density_matrix.h"
#include "qgt/qstate/random.h"

namespace qgt {

enum class LoopSampling {
  kPerAttempt,  // every attempt sampled source by source
  kAggregated,  // attempt count and click cause drawn from their laws
};

struct LoopResult {
  bool timeout = false;
  int attempts = 0;  // n on success, n_max on timeout
  std::optional<HeraldEvent> event;
  DensityMatrix comm_state{2};
  bool false_click = false;
  std::array<double, 2> data_phases{};  // n * phase_per_attempt (Alice, Bob)
};

// One entanglement loop of at most n_max attempts. With a four-qubit
// register, the data qubits are dephased and precessed by the attempt count
// and, on success, the communication qubits replaced by the heralded state.
LoopResult RunEntanglementLoop(const NodeParams& alice, const NodeParams& bob,
                               const HeraldModelParams& herald, int n_max,
                               RandomStream& rng,
                               DensityMatrix* reg = nullptr,
                               LoopSampling sampling = LoopSampling::kPerAttempt,
                               bool dephasing = true);

// Attempt index of the first success given success within n_max.
int SampleSuccessAttempt(double q, int n_max, RandomStream& rng);
// Number of timed-out loops before the successful one.
long SampleTimeoutRounds(double q, int n_max, RandomStream& rng);
// P(success within n_max attempts).
double LoopSuccessProbability(double q, int n_max);

// Retention, then Rz(n phi) on each data qubit.
void ApplyAttemptEvolution(DensityMatrix& reg, int n, const NodeParams& alice,
                           const NodeParams& bob, bool dephasing);
// Traces out Ac and Bc and inserts the two-qubit state in their place.
void ReplaceCommQubits(DensityMatrix& reg, const DensityMatrix& comm_pair);

}  // namespace qgt

#endif  // QGT_PROTOCOL_ENTANGLEMENT_H_
