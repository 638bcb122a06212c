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

#ifndef QGT_PROTOCOL_EXECUTOR_H_
#define QGT_PROTOCOL_EXECUTOR_H_

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgt/calib/lookup_table.h"
#include "qgt/circuits/native_gate.h"
#include "qgt/physics/herald.h"
#include "qgt/protocol/network.h"
#include "qgt/protocol/node_params.h"
#include "qgt/qstate/density_matrix.h"
#include "qgt/qstate/random.h"

namespace qgt {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NoiseToggles {
  bool herald = true;        // heralded-state infidelity and false clicks
  bool dephasing = true;     // data-qubit dephasing during attempts
  bool depolarizing = true;  // comm depolarization after local gates
  bool readout = true;       // comm misassignment (and its phase errors)
  bool mapping = true;       // assisted-readout contrast C_en
  bool init = false;         // data-qubit preparation infidelity
  bool quantization = true;  // DD look-up table phase residual

  static NoiseToggles AllOff();
  static std::vector<std::string> Names();
  // Throws std::invalid_argument for an unknown channel name.
  void Set(const std::string& name, bool on);
  bool Get(const std::string& name) const;
};

struct ProtocolSetup {
  NodeParams alice = AliceDefaults();
  NodeParams bob = BobDefaults();
  HeraldModelParams herald = CalibratedHeraldDefaults();
  int n_max = 50;
  // Attempt counts covered by the DD look-up table beyond n_max (decay
  // scans run the loop without heralding for up to this many attempts).
  int table_attempts = 0;
  double latency = 0.0;
  NoiseToggles noise;
  double delay_lo = 2.8e-6;
  double delay_hi = 3.2e-6;
  double delay_step = 4e-9;

  const NodeParams& Node(NodeId id) const {
    return id == NodeId::kAlice ? alice : bob;
  }
  // Shared attempt duration; throws ProtocolError when the nodes disagree.
  double AttemptDuration() const;
  void Validate() const;
};

enum class ExecMode { kSample, kExact };

struct ExecOptions {
  ExecMode mode = ExecMode::kSample;
  bool explicit_frames = false;  // frame updates executed as Rz gates
  bool flush_frames = true;      // apply pending frames at the end
  bool trace = false;
  // Exact mode (and sample mode when > 0): successful attempt index.
  int forced_attempts = 0;
  Detector forced_detector = Detector::kD1;
  // Loop runs forced_attempts without heralding (coherence measurements).
  bool attempts_only = false;
  std::optional<DensityMatrix> initial;
};

struct MeasurementRecord {
  std::string name;
  NodeId node = NodeId::kAlice;
  int qubit = -1;
  int physical = 0;
  int reported = 0;
  bool destructive = false;
  double time = 0.0;
  double duration = 0.0;
  double theta = 0.0;  // phase error left on the data qubit
};

struct TraceEvent {
  double time = 0.0;
  std::string node;
  std::string what;
};

struct ExecLeaf {
  double weight = 1.0;
  DensityMatrix state{kRegisterQubits};
  std::map<std::string, int> reported;
  std::map<std::string, int> physical;
  std::vector<MeasurementRecord> measurements;
  int attempts = 0;
  long retries = 0;
  Detector detector = Detector::kD1;
  bool false_click = false;
  std::array<double, 2> init_offset{};
  std::array<double, 2> loop_start{};
  std::array<double, 2> end_time{};
  std::array<double, 2> rephase_residual{};
  std::vector<ClassicalMessage> messages;
  std::vector<TraceEvent> trace;
  // Start time of every executed gate, per node and program index (last
  // execution wins after a retry).
  std::array<std::vector<double>, 2> gate_times;

  int Reported(const std::string& bit) const;
  int Physical(const std::string& bit) const;
};

class Engine {
 public:
  explicit Engine(ProtocolSetup setup);

  const ProtocolSetup& setup() const { return setup_; }
  const LookupTable* table(NodeId id) const;
  double click_probability() const { return click_prob_; }

  // Sample mode returns one leaf; exact mode returns every measurement
  // branch with its probability as weight.
  std::vector<ExecLeaf> Execute(const CompiledCircuit& c,
                                const ExecOptions& opts,
                                RandomStream* rng) const;
  ExecLeaf Sample(const CompiledCircuit& c, RandomStream& rng,
                  ExecOptions opts = {}) const;
  std::vector<ExecLeaf> Exact(const CompiledCircuit& c, int attempts,
                              Detector d, ExecOptions opts = {}) const;

 private:
  ProtocolSetup setup_;
  std::optional<LookupTable> table_[2];
  double click_prob_ = 0.0;
};

struct MidCircuitResult {
  int reported = 0;
  int physical = 0;
  double theta = 0.0;
  double duration = 0.0;
};

// Basis pulse, Z readout with misassignment on the reported bit, outcome
// phase on the data qubit and flip back to |0> on reported 1. Acts on a
// four-qubit register.
MidCircuitResult MidCircuitMeasureAndFeedforward(DensityMatrix& reg,
                                                 const NodeParams& node,
                                                 char basis, RandomStream& rng,
                                                 bool readout_noise = true);

// Phase left on the data qubit after a mid-circuit readout with physical
// outcome t and reported outcome r.
double ReadoutPhaseError(const NodeParams& node, int physical, int reported);

}  // namespace qgt

#endif  // QGT_PROTOCOL_EXECUTOR_H_
