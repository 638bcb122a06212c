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

#ifndef QGT_PHYSICS_READOUT_H_
#define QGT_PHYSICS_READOUT_H_

#include <Eigen/Dense>

#include "qgt/qstate/random.h"

namespace qgt {

enum class ReadoutFlavor { kDestructive, kNondestructive };

struct ReadoutModel {
  double f0 = 1.0;  // P(report 0 | physical 0)
  double f1 = 1.0;  // P(report 1 | physical 1)
  ReadoutFlavor flavor = ReadoutFlavor::kNondestructive;

  void Validate() const;
  bool IsIdeal() const { return f0 == 1.0 && f1 == 1.0; }
  // P(reported | physical).
  double Prob(int reported, int physical) const;
};

struct ReadoutOutcome {
  int physical = 0;
  int reported = 0;
};

// Samples the physical outcome, then the reported bit.
ReadoutOutcome SampleReadout(double prob_of_1, const ReadoutModel& model,
                             RandomStream& rng);
inline int ReadoutSample(double prob_of_1, const ReadoutModel& model,
                         RandomStream& rng) {
  return SampleReadout(prob_of_1, model, rng).reported;
}

// Column-stochastic confusion matrix C(r, t) = P(r | t).
Eigen::Matrix2d ConfusionMatrix(const ReadoutModel& model);

// Per-shot estimator g(r) with E[g(r) | t] = (-1)^t; the confusion-matrix
// inversion of a single +-1 eigenvalue.
double UnbiasedEigenvalue(int reported, const ReadoutModel& model);

}  // namespace qgt

#endif  // QGT_PHYSICS_READOUT_H_
