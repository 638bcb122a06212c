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

#include "qgt/runner/experiment.h"

#include <algorithm>
#include <sstream>
#include <thread>

#include "qgt/calib/correlators.h"
#include "qgt/circuits/library.h"
#include "qgt/qstate/pauli.h"

namespace qgt {

namespace {

std::string Key(const TrialPlan& p) { return p.bases + "|" + p.inputs; }

std::string Join(const std::vector<std::string>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

CompiledCircuit DecayCircuit(const NodeParams& node) {
  CompiledCircuit c;
  c.name = "decay_" + NodeName(node.node_id);
  NodeProgram& p = node.node_id == NodeId::kAlice ? c.alice : c.bob;
  p.node = node.node_id;
  p.gates = InitDataGates(InitState::kPlusX, node);
  p.gates.push_back(Entangle(kHerald, 0));
  p.gates.push_back(Rephase(node.data()));
  c.alice.node = NodeId::kAlice;
  c.bob.node = NodeId::kBob;
  return c;
}

}  // namespace

std::vector<std::string> OperatorsForSetting(ExperimentKind kind,
                                             const std::string& bases) {
  switch (kind) {
    case ExperimentKind::kGhz: {
      if (bases != "ZZZZ") return {bases};
      std::vector<std::string> ops;
      for (const auto& [op, sign] : GhzStabilizers()) {
        const std::string& s = op.str();
        if (s == "IIII") continue;
        if (s.find_first_of("XY") == std::string::npos) ops.push_back(s);
      }
      return ops;
    }
    case ExperimentKind::kCnotTruthTable:
      return {"ZI", "IZ", "ZZ"};
    case ExperimentKind::kCnotBell:
    case ExperimentKind::kEntangledStateOnly:
      return {bases};
    case ExperimentKind::kDecayCharacterization:
      return {};
  }
  return {};
}

namespace {

ProtocolSetup EngineSetup(const ExperimentConfig& cfg) {
  ProtocolSetup s = cfg.setup;
  if (cfg.experiment == ExperimentKind::kDecayCharacterization &&
      !cfg.decay_attempts.empty()) {
    s.table_attempts = *std::max_element(cfg.decay_attempts.begin(),
                                         cfg.decay_attempts.end());
  }
  return s;
}

}  // namespace

Experiment::Experiment(ExperimentConfig cfg)
    : cfg_(std::move(cfg)), engine_(EngineSetup(cfg_)) {
  cfg_.Validate();
  const NodeParams& a = cfg_.setup.alice;
  const NodeParams& b = cfg_.setup.bob;
  const std::vector<std::string> data_bits = {kDataA, kDataB};
  switch (cfg_.experiment) {
    case ExperimentKind::kGhz: {
      plans_.push_back({"ZZZZ", "", {kDataA, kMidA, kMidB, kDataB}, 0});
      for (const auto& [op, sign] : GhzStabilizers()) {
        if (op.str().find_first_of("XY") != std::string::npos) {
          plans_.push_back({op.str(), "", {kDataA, kMidA, kMidB, kDataB}, 0});
        }
      }
      for (const auto& p : plans_) circuits_[Key(p)] = CompileGhz(a, b, p.bases);
      break;
    }
    case ExperimentKind::kCnotTruthTable:
      for (InitState ia : {InitState::kPlusZ, InitState::kMinusZ}) {
        for (InitState ib : {InitState::kPlusZ, InitState::kMinusZ}) {
          TrialPlan p{"ZZ", InitStateName(ia) + InitStateName(ib), data_bits,
                      0};
          circuits_[Key(p)] = CompileTeleportedCnot(a, b, ia, ib, "ZZ");
          plans_.push_back(p);
        }
      }
      break;
    case ExperimentKind::kCnotBell:
      for (const char* bases : {"XX", "YY", "ZZ"}) {
        TrialPlan p{bases, "+X-Z", data_bits, 0};
        circuits_[Key(p)] = CompileTeleportedCnot(
            a, b, InitState::kPlusX, InitState::kMinusZ, bases);
        plans_.push_back(p);
      }
      break;
    case ExperimentKind::kEntangledStateOnly:
      for (const char* bases : {"XX", "YY", "ZZ"}) {
        TrialPlan p{bases, "", {kCommA, kCommB}, 0};
        circuits_[Key(p)] = CompileEntangledStateOnly(a, b, bases);
        plans_.push_back(p);
      }
      break;
    case ExperimentKind::kDecayCharacterization:
      for (int n : cfg_.decay_attempts) plans_.push_back({"X", "", {}, n});
      circuits_["decay"] = DecayCircuit(cfg_.setup.Node(cfg_.decay_node));
      break;
  }
}

TrialPlan Experiment::Plan(long trial) const {
  return plans_[static_cast<size_t>(trial) % plans_.size()];
}

const CompiledCircuit& Experiment::Circuit(const TrialPlan& plan) const {
  if (cfg_.experiment == ExperimentKind::kDecayCharacterization) {
    return circuits_.at("decay");
  }
  return circuits_.at(Key(plan));
}

ExactExpectation Experiment::ExactFor(const TrialPlan& plan, int attempts,
                                      Detector d) const {
  std::ostringstream key;
  key << Key(plan) << '|' << attempts << '|' << static_cast<int>(d);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = exact_cache_.find(key.str());
    if (it != exact_cache_.end()) return it->second;
  }
  const auto ops = OperatorsForSetting(cfg_.experiment, plan.bases);
  const auto leaves = engine_.Exact(Circuit(plan), attempts, d);
  const bool cnot = cfg_.experiment == ExperimentKind::kCnotTruthTable ||
                    cfg_.experiment == ExperimentKind::kCnotBell;
  ExactExpectation x;
  std::map<std::string, double> post_sum;
  for (const auto& op : ops) {
    x.value[op] = 0.0;
    post_sum[op] = 0.0;
  }
  for (const ExecLeaf& l : leaves) {
    const bool post = cnot && l.Reported(kMidA) == 0 && l.Reported(kMidB) == 0;
    if (post) x.post_probability += l.weight;
    for (const auto& op : ops) {
      int parity = 0;
      for (size_t q = 0; q < op.size(); ++q) {
        if (op[q] != 'I') parity ^= l.Physical(plan.qubits[q]);
      }
      const double v = parity ? -1.0 : 1.0;
      x.value[op] += l.weight * v;
      if (post) post_sum[op] += l.weight * v;
    }
  }
  if (x.post_probability > 0.0) {
    for (const auto& op : ops) {
      x.post_value[op] = post_sum[op] / x.post_probability;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  exact_cache_.emplace(key.str(), x);
  return x;
}

double Experiment::DecayCoherence(int attempts) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = decay_cache_.find(attempts);
    if (it != decay_cache_.end()) return it->second;
  }
  ExecOptions o;
  o.attempts_only = true;
  const auto leaves = engine_.Exact(circuits_.at("decay"), attempts,
                                    Detector::kD1, o);
  const int q = cfg_.setup.Node(cfg_.decay_node).data();
  std::string label(kRegisterQubits, 'I');
  label[q] = 'X';
  double x = 0.0;
  for (const auto& l : leaves) {
    x += l.weight * Expectation(l.state, PauliString(label));
  }
  std::lock_guard<std::mutex> lock(mu_);
  decay_cache_.emplace(attempts, x);
  return x;
}

ShotRecord Experiment::RunTrial(long trial) const {
  const TrialPlan plan = Plan(trial);
  ShotRecord r;
  r.trial = trial;
  r.seed = DeriveSeed(cfg_.seed, static_cast<uint64_t>(trial));
  r.experiment = ExperimentName(cfg_.experiment);
  RandomStream rng(r.seed);
  if (cfg_.experiment == ExperimentKind::kDecayCharacterization) {
    const double a = cfg_.setup.Node(cfg_.decay_node).decay.A;
    const double x = DecayCoherence(plan.decay_attempts);
    const double p0 = std::clamp(0.5 + a * x, 0.0, 1.0);
    r.decay_attempts = plan.decay_attempts;
    r.decay_outcome = rng.Bernoulli(p0) ? 0 : 1;
    if (cfg_.exact_expectations) {
      r.exact = ExactExpectation{};
      r.exact->value["X"] = x;
    }
    return r;
  }
  const ExecLeaf leaf = engine_.Sample(Circuit(plan), rng);
  r.bases = plan.bases;
  r.qubits = Join(plan.qubits);
  r.inputs = plan.inputs;
  r.detector = static_cast<int>(leaf.detector) + 1;
  r.attempts = leaf.attempts;
  r.retries = leaf.retries;
  r.false_click = leaf.false_click;
  for (const auto& m : leaf.measurements) {
    r.reported[m.name] = m.reported;
    r.physical[m.name] = m.physical;
  }
  r.sim_time = std::max(leaf.end_time[0], leaf.end_time[1]);
  if (cfg_.exact_expectations) {
    r.exact = ExactFor(plan, leaf.attempts, leaf.detector);
  }
  return r;
}

std::vector<ShotRecord> Experiment::RunAll() const {
  std::vector<ShotRecord> out(static_cast<size_t>(cfg_.shots));
  const int workers =
      static_cast<int>(std::min<long>(cfg_.workers, cfg_.shots));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (long i = w; i < cfg_.shots; i += workers) out[i] = RunTrial(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace qgt
