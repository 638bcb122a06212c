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

#ifndef QGT_RUNNER_CONFIG_H_
#define QGT_RUNNER_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgt/protocol/executor.h"

namespace qgt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  kGhz,
  kCnotTruthTable,
  kCnotBell,
  kEntangledStateOnly,
  kDecayCharacterization,
};

ExperimentKind ParseExperimentKind(const std::string& s);
std::string ExperimentName(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kGhz;
  ProtocolSetup setup;
  long shots = 360;
  uint64_t seed = 1;
  int workers = 1;
  std::string out_dir = "qgt_out";
  bool postselect_analysis = false;
  // Per-trial exact expectation given the sampled attempt count and
  // detector (Rao-Blackwellized estimator), stored next to the outcomes.
  bool exact_expectations = true;
  // decay_characterization
  NodeId decay_node = NodeId::kAlice;
  std::vector<int> decay_attempts = {1,   50,  100, 150, 200, 300,
                                     400, 500, 600, 800, 1000, 1200};

  void Validate() const;
};

// Flat "key = value" text; '#' starts a comment. Keys use dotted section
// names (alice.tau, herald.visibility, noise.readout). Times are in seconds,
// angular frequencies in rad/s, angles with a _deg suffix in degrees.
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);
// Applies one key; throws ConfigError naming the key.
void SetConfigValue(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);
std::vector<std::string> ConfigKeys();

// Checks L on both nodes and Bob's minimum tau.
struct TimingReport {
  bool ok = true;
  double L_alice = 0.0;
  double L_bob = 0.0;
  double tau_alice = 0.0;
  double tau_bob = 0.0;
  std::vector<std::string> violations;
};

TimingReport ValidateTiming(const ProtocolSetup& setup);

}  // namespace qgt

#endif  // QGT_RUNNER_CONFIG_H_
