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

#include "qgt/runner/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace qgt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ToDouble(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

long ToLong(const std::string& key, const std::string& v) {
  long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return x;
}

bool ToBool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected on/off, got '" + v + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key,
                                  const std::string& v)>;

Setter Num(std::function<double&(ExperimentConfig&)> f, double scale = 1.0) {
  return [f, scale](ExperimentConfig& c, const std::string& k,
                    const std::string& v) { f(c) = ToDouble(k, v) * scale; };
}

void AddNode(std::map<std::string, Setter>& m, const std::string& prefix,
             NodeParams ProtocolSetup::*node) {
  auto N = [node](ExperimentConfig& c) -> NodeParams& {
    return c.setup.*node;
  };
  m[prefix + ".control_method"] = [N](ExperimentConfig& c,
                                      const std::string& k,
                                      const std::string& v) {
    if (v == "ddrf") N(c).control_method = ControlMethod::kDdrf;
    else if (v == "dd") N(c).control_method = ControlMethod::kDd;
    else throw ConfigError(k + ": expected ddrf or dd, got '" + v + "'");
  };
  m[prefix + ".tau"] = Num([N](auto& c) -> double& { return N(c).tau; });
  m[prefix + ".t_reset"] = Num([N](auto& c) -> double& { return N(c).t_reset; });
  m[prefix + ".t"] = Num([N](auto& c) -> double& { return N(c).t; });
  m[prefix + ".min_tau"] = Num([N](auto& c) -> double& { return N(c).min_tau; });
  m[prefix + ".phase_per_attempt_deg"] = Num(
      [N](auto& c) -> double& { return N(c).phase_per_attempt; }, kDeg);
  m[prefix + ".init_fidelity"] =
      Num([N](auto& c) -> double& { return N(c).init_fidelity_target; });
  m[prefix + ".comm_depolarizing"] =
      Num([N](auto& c) -> double& { return N(c).comm_depolarizing; });
  m[prefix + ".hyperfine.omega_L"] =
      Num([N](auto& c) -> double& { return N(c).hyperfine.omega_L; });
  m[prefix + ".hyperfine.A_par"] =
      Num([N](auto& c) -> double& { return N(c).hyperfine.A_par; });
  m[prefix + ".hyperfine.A_perp"] =
      Num([N](auto& c) -> double& { return N(c).hyperfine.A_perp; });
  m[prefix + ".decay.N_1e"] =
      Num([N](auto& c) -> double& { return N(c).decay.N_1e; });
  m[prefix + ".decay.d"] = Num([N](auto& c) -> double& { return N(c).decay.d; });
  m[prefix + ".decay.A"] = Num([N](auto& c) -> double& { return N(c).decay.A; });
  m[prefix + ".readout.f0"] =
      Num([N](auto& c) -> double& { return N(c).readout.f0; });
  m[prefix + ".readout.f1"] =
      Num([N](auto& c) -> double& { return N(c).readout.f1; });
  m[prefix + ".final_readout.f0"] =
      Num([N](auto& c) -> double& { return N(c).final_readout.f0; });
  m[prefix + ".final_readout.f1"] =
      Num([N](auto& c) -> double& { return N(c).final_readout.f1; });
  m[prefix + ".mapping.delta"] =
      Num([N](auto& c) -> double& { return N(c).mapping.delta; });
  m[prefix + ".mapping.N_0"] =
      Num([N](auto& c) -> double& { return N(c).mapping.N_0; });
  m[prefix + ".mapping.d"] =
      Num([N](auto& c) -> double& { return N(c).mapping.d; });
  m[prefix + ".mapping.beta"] =
      Num([N](auto& c) -> double& { return N(c).mapping.beta; });
  m[prefix + ".n_ro"] = [N](ExperimentConfig& c, const std::string& k,
                            const std::string& v) {
    N(c).n_ro = static_cast<int>(ToLong(k, v));
  };
  m[prefix + ".durations.ro_mid_max"] =
      Num([N](auto& c) -> double& { return N(c).durations.ro_mid_max; });
  m[prefix + ".durations.ro_mid_stop"] =
      Num([N](auto& c) -> double& { return N(c).durations.ro_mid_stop; });
  m[prefix + ".durations.ro_final"] =
      Num([N](auto& c) -> double& { return N(c).durations.ro_final; });
}

const std::map<std::string, Setter>& Table() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["experiment"] = [](ExperimentConfig& c, const std::string&,
                         const std::string& v) {
      c.experiment = ParseExperimentKind(v);
    };
    m["shots"] = [](ExperimentConfig& c, const std::string& k,
                    const std::string& v) { c.shots = ToLong(k, v); };
    m["seed"] = [](ExperimentConfig& c, const std::string& k,
                   const std::string& v) {
      const long s = ToLong(k, v);
      if (s < 0) throw ConfigError(k + ": must be >= 0");
      c.seed = static_cast<uint64_t>(s);
    };
    m["workers"] = [](ExperimentConfig& c, const std::string& k,
                      const std::string& v) {
      c.workers = static_cast<int>(ToLong(k, v));
    };
    m["out"] = [](ExperimentConfig& c, const std::string&,
                  const std::string& v) { c.out_dir = v; };
    m["postselect_analysis"] = [](ExperimentConfig& c, const std::string& k,
                                  const std::string& v) {
      c.postselect_analysis = ToBool(k, v);
    };
    m["exact_expectations"] = [](ExperimentConfig& c, const std::string& k,
                                 const std::string& v) {
      c.exact_expectations = ToBool(k, v);
    };
    m["n_max"] = [](ExperimentConfig& c, const std::string& k,
                    const std::string& v) {
      c.setup.n_max = static_cast<int>(ToLong(k, v));
    };
    m["latency"] = Num([](auto& c) -> double& { return c.setup.latency; });
    m["decay.node"] = [](ExperimentConfig& c, const std::string& k,
                         const std::string& v) {
      if (v == "alice") c.decay_node = NodeId::kAlice;
      else if (v == "bob") c.decay_node = NodeId::kBob;
      else throw ConfigError(k + ": expected alice or bob, got '" + v + "'");
    };
    m["decay.attempts"] = [](ExperimentConfig& c, const std::string& k,
                             const std::string& v) {
      std::vector<int> xs;
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) {
        xs.push_back(static_cast<int>(ToLong(k, Trim(item))));
      }
      c.decay_attempts = xs;
    };
    auto H = [](ExperimentConfig& c) -> HeraldModelParams& {
      return c.setup.herald;
    };
    m["herald.alpha_A"] = Num([H](auto& c) -> double& { return H(c).alpha_A; });
    m["herald.alpha_B"] = Num([H](auto& c) -> double& { return H(c).alpha_B; });
    m["herald.p_A"] = Num([H](auto& c) -> double& { return H(c).p_A; });
    m["herald.p_B"] = Num([H](auto& c) -> double& { return H(c).p_B; });
    m["herald.phi_deg"] =
        Num([H](auto& c) -> double& { return H(c).phi; }, kDeg);
    m["herald.phi_jitter_deg"] =
        Num([H](auto& c) -> double& { return H(c).phi_jitter_std; }, kDeg);
    m["herald.visibility"] =
        Num([H](auto& c) -> double& { return H(c).visibility; });
    m["herald.dark_count_prob"] =
        Num([H](auto& c) -> double& { return H(c).dark_count_prob; });
    m["herald.background_click_prob"] =
        Num([H](auto& c) -> double& { return H(c).background_click_prob; });
    for (const std::string& n : NoiseToggles::Names()) {
      m["noise." + n] = [n](ExperimentConfig& c, const std::string& k,
                            const std::string& v) {
        c.setup.noise.Set(n, ToBool(k, v));
      };
    }
    AddNode(m, "alice", &ProtocolSetup::alice);
    AddNode(m, "bob", &ProtocolSetup::bob);
    return m;
  }();
  return table;
}

}  // namespace

ExperimentKind ParseExperimentKind(const std::string& s) {
  if (s == "ghz") return ExperimentKind::kGhz;
  if (s == "cnot_truth_table") return ExperimentKind::kCnotTruthTable;
  if (s == "cnot_bell") return ExperimentKind::kCnotBell;
  if (s == "entangled_state_only") return ExperimentKind::kEntangledStateOnly;
  if (s == "decay_characterization") {
    return ExperimentKind::kDecayCharacterization;
  }
  throw ConfigError("experiment: unknown experiment '" + s + "'");
}

std::string ExperimentName(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kGhz: return "ghz";
    case ExperimentKind::kCnotTruthTable: return "cnot_truth_table";
    case ExperimentKind::kCnotBell: return "cnot_bell";
    case ExperimentKind::kEntangledStateOnly: return "entangled_state_only";
    case ExperimentKind::kDecayCharacterization:
      return "decay_characterization";
  }
  return "?";
}

void ExperimentConfig::Validate() const {
  if (shots < 1) throw ConfigError("shots: must be >= 1");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  if (decay_attempts.empty()) throw ConfigError("decay.attempts: empty list");
  for (int n : decay_attempts) {
    if (n < 1) throw ConfigError("decay.attempts: values must be >= 1");
  }
  const TimingReport t = ValidateTiming(setup);
  if (!t.ok) throw ConfigError(t.violations.front());
  try {
    setup.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void SetConfigValue(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  const auto& t = Table();
  auto it = t.find(key);
  if (it == t.end()) throw ConfigError("unknown key '" + key + "'");
  it->second(cfg, key, value);
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : Table()) out.push_back(k);
  return out;
}

ExperimentConfig ParseConfig(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    SetConfigValue(cfg, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ParseConfig(ss.str());
}

TimingReport ValidateTiming(const ProtocolSetup& setup) {
  TimingReport r;
  r.L_alice = setup.alice.AttemptDuration();
  r.L_bob = setup.bob.AttemptDuration();
  r.tau_alice = setup.alice.tau;
  r.tau_bob = setup.bob.tau;
  for (const NodeParams* n : {&setup.alice, &setup.bob}) {
    if (n->tau < n->min_tau) {
      std::ostringstream msg;
      msg << NodeName(n->node_id) << ".tau = " << n->tau * 1e6
          << " us is below the minimum tau of " << n->min_tau * 1e6 << " us";
      r.violations.push_back(msg.str());
    }
  }
  if (std::abs(r.L_alice - r.L_bob) > 1e-12) {
    std::ostringstream msg;
    msg.precision(6);
    msg << std::fixed << "L = 2 tau + t_reset - t differs between nodes: alice "
        << r.L_alice * 1e6 << " us, bob " << r.L_bob * 1e6 << " us";
    r.violations.push_back(msg.str());
  }
  r.ok = r.violations.empty();
  return r;
}

}  // namespace qgt
