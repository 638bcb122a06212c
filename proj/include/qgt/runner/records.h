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

#ifndef QGT_RUNNER_RECORDS_H_
#define QGT_RUNNER_RECORDS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qgt {

inline constexpr int kRecordSchemaVersion = 1;

// Exact (branch-enumerated) expectations of a trial's operators given its
// sampled attempt count and detector.
struct ExactExpectation {
  std::map<std::string, double> value;
  // Post-selection on reported mid-circuit outcomes 00.
  double post_probability = 0.0;
  std::map<std::string, double> post_value;
};

struct ShotRecord {
  long trial = 0;
  uint64_t seed = 0;
  std::string experiment;
  std::string bases;   // one letter per measured qubit
  std::string qubits;  // comma-separated bit names, same order as bases
  std::string inputs;  // CNOT input states, e.g. "+Z-Z"
  int detector = 0;    // 1 or 2; 0 when no herald
  int attempts = 0;
  long retries = 0;
  bool false_click = false;
  std::map<std::string, int> reported;
  std::map<std::string, int> physical;
  double sim_time = 0.0;  // seconds, both nodes finished
  std::optional<ExactExpectation> exact;
  // decay_characterization
  int decay_attempts = 0;
  int decay_outcome = 0;

  std::vector<std::string> QubitList() const;
  std::vector<int> Bits(bool physical_bits) const;
};

nlohmann::ordered_json ToJson(const ShotRecord& r);
ShotRecord FromJson(const nlohmann::json& j);

void WriteRecords(std::ostream& os, const std::vector<ShotRecord>& records);
std::vector<ShotRecord> ReadRecords(const std::string& path);

}  // namespace qgt

#endif  // QGT_RUNNER_RECORDS_H_
