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

#ifndef QGT_RUNNER_EXPERIMENT_H_
#define QGT_RUNNER_EXPERIMENT_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qgt/circuits/native_gate.h"
#include "qgt/protocol/executor.h"
#include "qgt/runner/config.h"
#include "qgt/runner/records.h"

namespace qgt {

struct TrialPlan {
  std::string bases;
  std::string inputs;
  std::vector<std::string> qubits;  // bit names in bases order
  int decay_attempts = 0;
};

// Operators (over the measured qubits) estimated from one basis setting.
std::vector<std::string> OperatorsForSetting(ExperimentKind kind,
                                             const std::string& bases);

class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  const ExperimentConfig& config() const { return cfg_; }
  const Engine& engine() const { return engine_; }

  TrialPlan Plan(long trial) const;
  const CompiledCircuit& Circuit(const TrialPlan& plan) const;
  ShotRecord RunTrial(long trial) const;
  // Trials are partitioned over cfg.workers threads by index.
  std::vector<ShotRecord> RunAll() const;

  // Distinct settings cycled through by trial index.
  const std::vector<TrialPlan>& plans() const { return plans_; }

 private:
  ExactExpectation ExactFor(const TrialPlan& plan, int attempts,
                            Detector d) const;
  double DecayCoherence(int attempts) const;

  ExperimentConfig cfg_;
  Engine engine_;
  std::vector<TrialPlan> plans_;
  std::map<std::string, CompiledCircuit> circuits_;
  mutable std::mutex mu_;
  mutable std::map<std::string, ExactExpectation> exact_cache_;
  mutable std::map<int, double> decay_cache_;
};

}  // namespace qgt

#endif  // QGT_RUNNER_EXPERIMENT_H_
