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

#include "qgt/runner/records.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgt {

std::vector<std::string> ShotRecord::QubitList() const {
  std::vector<std::string> out;
  std::stringstream ss(qubits);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<int> ShotRecord::Bits(bool physical_bits) const {
  std::vector<int> out;
  const auto& m = physical_bits ? physical : reported;
  for (const auto& q : QubitList()) out.push_back(m.at(q));
  return out;
}

nlohmann::ordered_json ToJson(const ShotRecord& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kRecordSchemaVersion;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["experiment"] = r.experiment;
  if (r.experiment == "decay_characterization") {
    j["decay_attempts"] = r.decay_attempts;
    j["outcome"] = r.decay_outcome;
    if (r.exact) j["exact"] = {{"value", r.exact->value}};
    return j;
  }
  j["bases"] = r.bases;
  j["qubits"] = r.qubits;
  if (!r.inputs.empty()) j["inputs"] = r.inputs;
  j["detector"] = r.detector;
  j["attempts"] = r.attempts;
  j["retries"] = r.retries;
  j["false_click"] = r.false_click;
  j["reported"] = r.reported;
  j["physical"] = r.physical;
  j["sim_time"] = r.sim_time;
  if (r.exact) {
    j["exact"] = {{"value", r.exact->value},
                  {"post_probability", r.exact->post_probability},
                  {"post_value", r.exact->post_value}};
  }
  return j;
}

ShotRecord FromJson(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kRecordSchemaVersion) {
    throw std::runtime_error("unsupported record schema version");
  }
  ShotRecord r;
  r.trial = j.at("trial").get<long>();
  r.seed = j.at("seed").get<uint64_t>();
  r.experiment = j.at("experiment").get<std::string>();
  if (r.experiment == "decay_characterization") {
    r.decay_attempts = j.at("decay_attempts").get<int>();
    r.decay_outcome = j.at("outcome").get<int>();
    if (j.contains("exact")) {
      r.exact = ExactExpectation{};
      r.exact->value =
          j["exact"]["value"].get<std::map<std::string, double>>();
    }
    return r;
  }
  r.bases = j.at("bases").get<std::string>();
  r.qubits = j.at("qubits").get<std::string>();
  if (j.contains("inputs")) r.inputs = j["inputs"].get<std::string>();
  r.detector = j.at("detector").get<int>();
  r.attempts = j.at("attempts").get<int>();
  r.retries = j.at("retries").get<long>();
  r.false_click = j.at("false_click").get<bool>();
  r.reported = j.at("reported").get<std::map<std::string, int>>();
  r.physical = j.at("physical").get<std::map<std::string, int>>();
  r.sim_time = j.at("sim_time").get<double>();
  if (j.contains("exact")) {
    const auto& e = j["exact"];
    ExactExpectation x;
    x.value = e.at("value").get<std::map<std::string, double>>();
    x.post_probability = e.at("post_probability").get<double>();
    x.post_value = e.at("post_value").get<std::map<std::string, double>>();
    r.exact = x;
  }
  return r;
}

void WriteRecords(std::ostream& os, const std::vector<ShotRecord>& records) {
  for (const auto& r : records) os << ToJson(r).dump() << '\n';
}

std::vector<ShotRecord> ReadRecords(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open records file '" + path + "'");
  std::vector<ShotRecord> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    out.push_back(FromJson(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace qgt
