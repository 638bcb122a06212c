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

#include "qgt/physics/readout.h"

#include <sstream>
#include <stdexcept>

namespace qgt {

void ReadoutModel::Validate() const {
  for (double f : {f0, f1}) {
    if (!(f >= 0.5 && f <= 1.0)) {
      std::ostringstream msg;
      msg << "readout fidelity " << f << " outside [0.5, 1]";
      throw std::invalid_argument(msg.str());
    }
  }
}

double ReadoutModel::Prob(int reported, int physical) const {
  const double keep = physical ? f1 : f0;
  return reported == physical ? keep : 1.0 - keep;
}

ReadoutOutcome SampleReadout(double prob_of_1, const ReadoutModel& model,
                             RandomStream& rng) {
  if (!(prob_of_1 >= 0.0 && prob_of_1 <= 1.0)) {
    throw std::invalid_argument("readout probability outside [0, 1]");
  }
  ReadoutOutcome out;
  out.physical = rng.Uniform() < prob_of_1 ? 1 : 0;
  const double keep = out.physical ? model.f1 : model.f0;
  out.reported = rng.Uniform() < keep ? out.physical : 1 - out.physical;
  return out;
}

Eigen::Matrix2d ConfusionMatrix(const ReadoutModel& model) {
  Eigen::Matrix2d c;
  c << model.f0, 1.0 - model.f1, 1.0 - model.f0, model.f1;
  return c;
}

double UnbiasedEigenvalue(int reported, const ReadoutModel& model) {
  const double s = reported ? -1.0 : 1.0;
  const double denom = model.f0 + model.f1 - 1.0;
  if (denom <= 0.0) {
    throw std::invalid_argument("confusion matrix is not invertible");
  }
  return (s - (model.f0 - model.f1)) / denom;
}

}  // namespace qgt
