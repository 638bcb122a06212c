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

#ifndef QGT_QSTATE_KRAUS_H_
#define QGT_QSTATE_KRAUS_H_

#include <vector>

#include "qgt/qstate/density_matrix.h"
#include "qgt/qstate/random.h"

namespace qgt {

class KrausChannel {
 public:
  KrausChannel() = default;
  // Throws StateError if the operators are not trace preserving.
  explicit KrausChannel(std::vector<Mat> ops);

  static KrausChannel Identity(int num_qubits);

  const std::vector<Mat>& ops() const { return ops_; }
  int num_qubits() const { return num_qubits_; }
  double TracePreservationError() const;

 private:
  std::vector<Mat> ops_;
  int num_qubits_ = 0;
};

// rho -> (1 - lambda) rho + lambda Z rho Z.
KrausChannel DephasingChannel(double lambda);

DensityMatrix ApplyChannel(const DensityMatrix& state, const KrausChannel& ch,
                           std::span<const int> targets);
void ApplyChannelInPlace(DensityMatrix& state, const KrausChannel& ch,
                         std::span<const int> targets);

// Fast paths used by the protocol engine.
void DephaseInPlace(DensityMatrix& state, int target, double retention);
void DepolarizeInPlace(DensityMatrix& state, int target, double p_dep);

struct MeasureResult {
  int outcome = 0;
  DensityMatrix post_state{1};
  double probability = 0.0;
};

// Born probability of outcome 1 for a Z measurement of target.
double ProbabilityOfOne(const DensityMatrix& state, int target);

// Projects target onto |outcome>, renormalizes, returns Born probability.
// Leaves the state untouched and returns 0 when the branch is empty.
double ProjectInPlace(DensityMatrix& state, int target, int outcome);

MeasureResult MeasureQubit(const DensityMatrix& state, int target,
                           RandomStream& rng);

}  // namespace qgt

#endif  // QGT_QSTATE_KRAUS_H_
