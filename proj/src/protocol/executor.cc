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

#include "qgt/protocol/executor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgt/circuits/library.h"
#include "qgt/physics/readout.h"
#include "qgt/protocol/entanglement.h"
#include "qgt/protocol/phase_frame.h"
#include "qgt/qstate/kraus.h"
#include "qgt/qstate/pauli.h"

namespace qgt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

int Idx(NodeId id) { return static_cast<int>(id); }
NodeId Other(NodeId id) {
  return id == NodeId::kAlice ? NodeId::kBob : NodeId::kAlice;
}
Endpoint Ep(NodeId id) {
  return id == NodeId::kAlice ? Endpoint::kAlice : Endpoint::kBob;
}

struct NodeRun {
  int pc = 0;
  double clock = 0.0;
};

struct Run {
  DensityMatrix state{kRegisterQubits};
  double weight = 1.0;
  std::array<NodeRun, 2> node;
  std::array<double, kRegisterQubits> frame{};
  // Time at which each node learns each bit.
  std::map<std::string, std::array<double, 2>> known_at;
  Network net;
  bool loop_sampled = false;
  long pending_rounds = 0;
  double round_start = 0.0;
  ExecLeaf leaf;
};

void ResetQubit(DensityMatrix& s, int q) {
  Eigen::Matrix2cd k0, k1;
  k0 << 1, 0, 0, 0;
  k1 << 0, 1, 0, 0;
  DensityMatrix a = s, b = s;
  const int t[1] = {q};
  ApplyUnitaryUnchecked(a, k0, t);
  ApplyUnitaryUnchecked(b, k1, t);
  s.mutable_matrix() = a.matrix() + b.matrix();
}

double Deg(double r) { return r * 180.0 / kPi; }

}  // namespace

// ---------------------------------------------------------------------------

NoiseToggles NoiseToggles::AllOff() {
  NoiseToggles t;
  for (const auto& n : Names()) t.Set(n, false);
  return t;
}

std::vector<std::string> NoiseToggles::Names() {
  return {"herald", "dephasing", "depolarizing", "readout",
          "mapping", "init", "quantization"};
}

void NoiseToggles::Set(const std::string& name, bool on) {
  if (name == "herald") herald = on;
  else if (name == "dephasing") dephasing = on;
  else if (name == "depolarizing") depolarizing = on;
  else if (name == "readout") readout = on;
  else if (name == "mapping") mapping = on;
  else if (name == "init") init = on;
  else if (name == "quantization") quantization = on;
  else throw std::invalid_argument("unknown noise channel '" + name + "'");
}

bool NoiseToggles::Get(const std::string& name) const {
  if (name == "herald") return herald;
  if (name == "dephasing") return dephasing;
  if (name == "depolarizing") return depolarizing;
  if (name == "readout") return readout;
  if (name == "mapping") return mapping;
  if (name == "init") return init;
  if (name == "quantization") return quantization;
  throw std::invalid_argument("unknown noise channel '" + name + "'");
}

double ProtocolSetup::AttemptDuration() const {
  const double la = alice.AttemptDuration();
  const double lb = bob.AttemptDuration();
  if (std::abs(la - lb) > 1e-12) {
    std::ostringstream msg;
    msg << "L = 2 tau + t_reset - t differs between nodes: alice "
        << la * 1e6 << " us, bob " << lb * 1e6 << " us";
    throw ProtocolError(msg.str());
  }
  return la;
}

void ProtocolSetup::Validate() const {
  alice.Validate();
  bob.Validate();
  herald.Validate();
  if (alice.node_id != NodeId::kAlice || bob.node_id != NodeId::kBob) {
    throw std::invalid_argument("node ids do not match their slots");
  }
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (latency < 0.0) throw std::invalid_argument("latency must be >= 0");
  AttemptDuration();
}

int ExecLeaf::Reported(const std::string& bit) const {
  auto it = reported.find(bit);
  if (it == reported.end()) throw std::out_of_range("no bit " + bit);
  return it->second;
}

int ExecLeaf::Physical(const std::string& bit) const {
  auto it = physical.find(bit);
  if (it == physical.end()) throw std::out_of_range("no bit " + bit);
  return it->second;
}

double ReadoutPhaseError(const NodeParams& node, int physical, int reported) {
  if (physical == reported) return 0.0;
  const PrecessionFrequencies w = node.Omegas();
  const double wt = physical ? w.omega_1 : w.omega_0;
  const double wr = reported ? w.omega_1 : w.omega_0;
  const double t = reported ? node.durations.ro_mid_max
                            : node.durations.ro_mid_stop;
  return (wt - wr) * t;
}

MidCircuitResult MidCircuitMeasureAndFeedforward(DensityMatrix& reg,
                                                 const NodeParams& node,
                                                 char basis, RandomStream& rng,
                                                 bool readout_noise) {
  const int c = node.comm();
  if (basis == 'X') Apply1(reg, gates::Rxy(kPi / 2, -kPi / 2), c);
  else if (basis == 'Y') Apply1(reg, gates::Rx(kPi / 2), c);
  else if (basis != 'Z') throw std::invalid_argument("unknown basis");
  ReadoutModel model = readout_noise ? node.readout : ReadoutModel{};
  const ReadoutOutcome o = SampleReadout(
      std::clamp(ProbabilityOfOne(reg, c), 0.0, 1.0), model, rng);
  ProjectInPlace(reg, c, o.physical);
  MidCircuitResult out;
  out.physical = o.physical;
  out.reported = o.reported;
  out.theta = ReadoutPhaseError(node, o.physical, o.reported);
  out.duration = o.reported ? node.durations.ro_mid_max
                            : node.durations.ro_mid_stop;
  if (out.theta != 0.0) Apply1(reg, gates::Rz(out.theta), node.data());
  if (out.reported) Apply1(reg, gates::X(), c);
  return out;
}

// ---------------------------------------------------------------------------

Engine::Engine(ProtocolSetup setup) : setup_(std::move(setup)) {
  setup_.Validate();
  for (NodeId id : {NodeId::kAlice, NodeId::kBob}) {
    const NodeParams& n = setup_.Node(id);
    if (n.control_method == ControlMethod::kDd) {
      const int cover = std::max(setup_.n_max, setup_.table_attempts);
      table_[Idx(id)] = CompileNodeTable(n, cover, setup_.delay_lo,
                                         setup_.delay_hi, setup_.delay_step);
    }
  }
  click_prob_ = ComputeHeraldProbabilities(setup_.herald).single_click;
}

const LookupTable* Engine::table(NodeId id) const {
  return table_[Idx(id)] ? &*table_[Idx(id)] : nullptr;
}

namespace {

class Executor {
 public:
  Executor(const Engine& eng, const CompiledCircuit& c, const ExecOptions& o,
           RandomStream* rng)
      : eng_(eng), s_(eng.setup()), c_(c), o_(o), rng_(rng),
        L_(eng.setup().AttemptDuration()) {}

  std::vector<ExecLeaf> RunAll() {
    c_.Validate();
    if (o_.mode == ExecMode::kSample && !rng_) {
      throw std::invalid_argument("sample mode needs a random stream");
    }
    if (o_.mode == ExecMode::kExact && !o_.attempts_only &&
        HasEntangle() && o_.forced_attempts < 1) {
      throw std::invalid_argument("exact mode needs forced_attempts >= 1");
    }
    Run r;
    r.net = Network(s_.latency);
    if (o_.initial) {
      if (o_.initial->num_qubits() != kRegisterQubits) {
        throw StateError("initial state must span the 4-qubit register");
      }
      r.state = *o_.initial;
    }
    // Delay the faster node so that both reach the loop together.
    const std::vector<double> off =
        SynchronizeInit({PreSyncDuration(NodeId::kAlice),
                         PreSyncDuration(NodeId::kBob)});
    for (NodeId id : {NodeId::kAlice, NodeId::kBob}) {
      r.node[Idx(id)].clock = off[Idx(id)];
      r.leaf.init_offset[Idx(id)] = off[Idx(id)];
      r.leaf.gate_times[Idx(id)].assign(Prog(id).size(), 0.0);
    }
    std::vector<Run> stack;
    stack.push_back(std::move(r));
    std::vector<ExecLeaf> leaves;
    while (!stack.empty()) {
      Run cur = std::move(stack.back());
      stack.pop_back();
      Advance(cur, stack);
      if (cur.weight > 0.0) leaves.push_back(Finish(cur));
    }
    return leaves;
  }

 private:
  const std::vector<NativeGate>& Prog(NodeId id) const {
    return c_.Program(id).gates;
  }
  const NodeParams& Node(NodeId id) const { return s_.Node(id); }

  bool HasEntangle() const {
    for (const auto& g : c_.alice.gates) {
      if (g.kind == GateKind::kEntangle) return true;
    }
    for (const auto& g : c_.bob.gates) {
      if (g.kind == GateKind::kEntangle) return true;
    }
    return false;
  }

  double PreSyncDuration(NodeId id) const {
    double t = 0.0;
    for (const auto& g : Prog(id)) {
      if (g.kind == GateKind::kEntangle || g.kind == GateKind::kBarrier) break;
      t += g.duration;
    }
    return t;
  }

  static bool IsSync(const NativeGate& g) {
    return g.kind == GateKind::kEntangle || g.kind == GateKind::kBarrier;
  }

  void Trace(Run& r, double t, NodeId id, const std::string& what) {
    if (o_.trace) r.leaf.trace.push_back({t, NodeName(id), what});
  }

  // Earliest time at which node id can execute its next gate, or +inf when
  // it waits on a sync point or an unknown bit. Sets *sync when waiting on a
  // sync point.
  double ReadyTime(const Run& r, NodeId id, bool* sync, bool* done) const {
    const NodeRun& n = r.node[Idx(id)];
    *sync = false;
    *done = n.pc >= static_cast<int>(Prog(id).size());
    if (*done) return kInf;
    const NativeGate& g = Prog(id)[n.pc];
    if (IsSync(g)) {
      *sync = true;
      return kInf;
    }
    if (g.condition) {
      auto it = r.known_at.find(g.condition->bit);
      if (it == r.known_at.end()) return kInf;
      return std::max(n.clock, it->second[Idx(id)]);
    }
    return n.clock;
  }

  void Advance(Run& r, std::vector<Run>& stack) {
    while (true) {
      bool sync[2], done[2];
      double ready[2];
      for (NodeId id : {NodeId::kAlice, NodeId::kBob}) {
        ready[Idx(id)] = ReadyTime(r, id, &sync[Idx(id)], &done[Idx(id)]);
      }
      if (done[0] && done[1]) return;
      if (ready[0] < kInf || ready[1] < kInf) {
        const NodeId id = ready[0] <= ready[1] ? NodeId::kAlice : NodeId::kBob;
        r.node[Idx(id)].clock = ready[Idx(id)];
        Step(r, id, stack);
        if (r.weight <= 0.0) return;
        continue;
      }
      // Nobody can run: either a joint sync point or a deadlock.
      const bool single_a = Prog(NodeId::kBob).empty();
      const bool single_b = Prog(NodeId::kAlice).empty();
      if (sync[0] && sync[1]) {
        SyncStep(r, false);
      } else if ((sync[0] && single_a) || (sync[1] && single_b)) {
        SyncStep(r, true);
      } else {
        std::ostringstream msg;
        msg << "circuit " << c_.name << ": deadlock at alice pc "
            << r.node[0].pc << ", bob pc " << r.node[1].pc;
        throw ProtocolError(msg.str());
      }
    }
  }

  void SyncStep(Run& r, bool single) {
    std::vector<NodeId> ids;
    for (NodeId id : {NodeId::kAlice, NodeId::kBob}) {
      if (!Prog(id).empty()) ids.push_back(id);
    }
    const NativeGate& g = Prog(ids[0])[r.node[Idx(ids[0])].pc];
    if (!single) {
      const NativeGate& h = Prog(ids[1])[r.node[Idx(ids[1])].pc];
      if (h.kind != g.kind || h.name != g.name) {
        throw ProtocolError("circuit " + c_.name + ": mismatched sync points");
      }
    }
    double t = 0.0;
    for (NodeId id : ids) t = std::max(t, r.node[Idx(id)].clock);
    if (!single) t += s_.latency;  // SyncReady exchange
    for (NodeId id : ids) {
      r.leaf.gate_times[Idx(id)][r.node[Idx(id)].pc] = t;
    }
    if (g.kind == GateKind::kBarrier) {
      for (NodeId id : ids) {
        r.node[Idx(id)].clock = t;
        r.node[Idx(id)].pc++;
        Trace(r, t, id, "barrier " + g.name);
      }
      return;
    }
    EntangleStep(r, ids, g, t);
  }

  DensityMatrix HeraldPair(int sign, Detector d, Run& r) {
    const HeraldModelParams& h = s_.herald;
    if (!s_.noise.herald) return DensityMatrix::FromPure(BellPsi(sign, h.phi));
    if (o_.mode == ExecMode::kExact) return HeraldedState(h, d);
    const HeraldProbabilities hp = ComputeHeraldProbabilities(h);
    r.leaf.false_click = rng_->Uniform() < hp.false_fraction;
    if (r.leaf.false_click) return FalseClickState(h);
    const double phi = h.phi + h.phi_jitter_std * rng_->Normal();
    return SignalHeraldStateAtPhase(h, d, phi);
  }

  void EntangleStep(Run& r, const std::vector<NodeId>& ids,
                    const NativeGate& g, double start) {
    const NodeParams& a = s_.alice;
    const NodeParams& b = s_.bob;
    const bool sample = o_.mode == ExecMode::kSample;
    if (r.pending_rounds > 0) {
      // Identical deterministic rounds between the first timeout and the
      // successful loop are skipped in time only.
      const double round = start - r.round_start;
      start += double(r.pending_rounds) * round;
      r.pending_rounds = 0;
    }
    for (NodeId id : ids) r.leaf.loop_start[Idx(id)] = start;

    if (!o_.attempts_only && sample && o_.forced_attempts == 0 &&
        !r.loop_sampled) {
      r.loop_sampled = true;
      if (eng_.click_probability() <= 0.0) {
        throw ProtocolError("click probability is zero; the loop never heralds");
      }
      const long rounds =
          SampleTimeoutRounds(eng_.click_probability(), s_.n_max, *rng_);
      r.leaf.retries = rounds;
      if (rounds > 0) {
        ApplyAttemptEvolution(r.state, s_.n_max, a, b, s_.noise.dephasing);
        const double end = start + s_.n_max * L_;
        for (NodeId id : ids) {
          Trace(r, end, id, "entangle timeout after " +
                                std::to_string(s_.n_max) + " attempts");
          r.node[Idx(id)].pc = g.retry_to;
          r.node[Idx(id)].clock = end + r.leaf.init_offset[Idx(id)];
          // Re-initialization invalidates the frames of the node.
          r.frame[Node(id).comm()] = 0.0;
          r.frame[Node(id).data()] = 0.0;
        }
        r.pending_rounds = rounds - 1;
        r.round_start = start;
        return;
      }
    }

    int n;
    if (o_.attempts_only || o_.mode == ExecMode::kExact || o_.forced_attempts > 0) {
      n = o_.forced_attempts;
    } else {
      n = SampleSuccessAttempt(eng_.click_probability(), s_.n_max, *rng_);
    }
    r.leaf.attempts = n;
    ApplyAttemptEvolution(r.state, n, a, b, s_.noise.dephasing);
    const double end = start + n * L_;
    int minus = 0;
    if (!o_.attempts_only) {
      Detector d = o_.forced_detector;
      if (sample && o_.forced_attempts == 0) {
        d = rng_->Uniform() < 0.5 ? Detector::kD1 : Detector::kD2;
      }
      r.leaf.detector = d;
      const int sign = DetectorSign(d);
      minus = sign < 0;
      ReplaceCommQubits(r.state, HeraldPair(sign, d, r));
      // The known optical phase is absorbed in Alice's comm frame.
      r.frame[kAliceComm] = -s_.herald.phi;
      r.frame[kBobComm] = 0.0;
      ClassicalMessage m;
      m.kind = MessageKind::kHeraldResult;
      m.sender = Endpoint::kMidpoint;
      m.name = std::string(g.name) + "_minus";
      m.payload = {minus};
      std::array<double, 2> at{kInf, kInf};
      for (NodeId id : {NodeId::kAlice, NodeId::kBob}) {
        m.receiver = Ep(id);
        at[Idx(id)] = r.net.Send(m, end).delivery_time;
      }
      r.known_at[m.name] = at;
      r.leaf.reported[m.name] = minus;
      r.leaf.physical[m.name] = minus;
    }
    for (NodeId id : ids) {
      std::ostringstream w;
      w << "entangle " << g.name << " n=" << n;
      if (!o_.attempts_only) w << " detector=D" << (minus ? 2 : 1);
      Trace(r, end, id, w.str());
      r.node[Idx(id)].clock = end;
      r.node[Idx(id)].pc++;
    }
  }

  void Rotate(Run& r, int q, double axis, double angle) {
    const double phi = o_.explicit_frames ? axis : axis - r.frame[q];
    Apply1(r.state, gates::Rxy(phi, angle), q);
  }

  void AddFrame(Run& r, int q, double angle) {
    if (o_.explicit_frames) {
      Apply1(r.state, gates::Rz(angle), q);
    } else {
      r.frame[q] = WrapPhase(r.frame[q] + angle);
    }
  }

  void Step(Run& r, NodeId id, std::vector<Run>& stack) {
    NodeRun& nr = r.node[Idx(id)];
    const NativeGate& g = Prog(id)[nr.pc];
    const NodeParams& node = Node(id);
    r.leaf.gate_times[Idx(id)][nr.pc] = nr.clock;
    if (g.condition) {
      const int v = r.leaf.reported.at(g.condition->bit);
      if (v != g.condition->value) {
        nr.pc++;
        return;
      }
    }
    double dur = g.duration;
    std::ostringstream w;
    if (o_.trace) {
      w << KindName(g.kind) << ' ';
      if (g.target >= 0) w << QubitName(g.target) << ' ';
    }
    switch (g.kind) {
      case GateKind::kMwRotation:
      case GateKind::kRfRotation:
        Rotate(r, g.target, g.axis, g.angle);
        if (o_.trace) w << " axis=" << Deg(g.axis) << " angle=" << Deg(g.angle);
        break;
      case GateKind::kCondRotation: {
        if (g.tag == GateTag::kReadoutMap && s_.noise.mapping) {
          DepolarizeInPlace(r.state, g.target, 1.0 - node.MappingContrast());
        }
        const double phi =
            o_.explicit_frames ? g.axis : g.axis - r.frame[g.target];
        const int t[2] = {g.control, g.target};
        ApplyUnitaryUnchecked(r.state, gates::ConditionalRotation(phi), t);
        if (g.tag == GateTag::kLocalEntangle && s_.noise.depolarizing) {
          DepolarizeInPlace(r.state, g.control, node.comm_depolarizing);
        }
        break;
      }
      case GateKind::kPhaseFrame:
        AddFrame(r, g.target, g.angle);
        if (o_.trace) w << " angle=" << Deg(g.angle);
        break;
      case GateKind::kPauli:
        if (g.pauli == 'X') Rotate(r, g.target, 0.0, kPi);
        else if (g.pauli == 'Y') Rotate(r, g.target, kPi / 2, kPi);
        else if (g.pauli == 'Z') AddFrame(r, g.target, kPi);
        if (o_.trace) w << ' ' << g.pauli;
        break;
      case GateKind::kReset:
        ResetQubit(r.state, g.target);
        r.frame[g.target] = 0.0;
        break;
      case GateKind::kWait:
        break;
      case GateKind::kRephase:
        dur = RephaseStep(r, id, g.target);
        break;
      case GateKind::kSend: {
        ClassicalMessage m;
        m.kind = MessageKind::kMidCircuitOutcome;
        m.sender = Ep(id);
        m.receiver = Ep(Other(id));
        m.name = g.name;
        m.payload = {r.leaf.reported.at(g.name)};
        const double at = r.net.Send(m, nr.clock).delivery_time;
        r.known_at[g.name][Idx(Other(id))] =
            std::min(r.known_at[g.name][Idx(Other(id))], at);
        if (o_.trace) w << g.name << '=' << m.payload[0];
        break;
      }
      case GateKind::kMeasure:
        MeasureStep(r, id, g, stack);
        return;
      case GateKind::kBarrier:
      case GateKind::kEntangle:
        throw ProtocolError("sync gate reached a single-node step");
    }
    if (g.tag == GateTag::kInitDone && s_.noise.init) {
      DepolarizeInPlace(r.state, node.data(), node.InitDepolarizing());
    }
    if (g.condition && o_.trace) {
      w << " [" << g.condition->bit << "==" << g.condition->value << ']';
    }
    Trace(r, nr.clock, id, w.str());
    nr.clock += dur;
    nr.pc++;
  }

  double RephaseStep(Run& r, NodeId id, int data) {
    const NodeParams& node = Node(id);
    const int n = r.leaf.attempts;
    PhaseFrame frame;
    frame.mode = FrameModeFor(node);
    if (frame.mode == FrameMode::kContinuous) {
      const PhaseCorrection pc = ApplyPhaseCorrection(frame, n, node, nullptr);
      AddFrame(r, data, pc.correction);
      r.leaf.rephase_residual[Idx(id)] = 0.0;
      return 0.0;
    }
    const LookupTable* t = eng_.table(id);
    const PhaseCorrection pc = ApplyPhaseCorrection(frame, n, node, t);
    const double phase = s_.noise.quantization
                             ? pc.correction
                             : -std::fmod(n * node.phase_per_attempt, 2 * kPi);
    Apply1(r.state, gates::Rz(phase), data);
    r.leaf.rephase_residual[Idx(id)] = s_.noise.quantization ? pc.residual : 0.0;
    return t->BlockDuration(pc.delay);
  }

  struct Branch {
    int t, rep;
    double p;
  };

  void MeasureStep(Run& r, NodeId id, const NativeGate& g,
                   std::vector<Run>& stack) {
    const NodeParams& node = Node(id);
    const int q = g.target;
    const ReadoutModel model =
        !s_.noise.readout ? ReadoutModel{}
                          : (g.destructive ? node.final_readout : node.readout);
    const double p1 = std::clamp(ProbabilityOfOne(r.state, q), 0.0, 1.0);
    std::vector<Branch> br;
    if (o_.mode == ExecMode::kSample) {
      const ReadoutOutcome o = SampleReadout(p1, model, *rng_);
      br.push_back({o.physical, o.reported, 1.0});
    } else {
      for (int t : {0, 1}) {
        const double pt = t ? p1 : 1.0 - p1;
        if (pt < 1e-14) continue;
        for (int rep : {0, 1}) {
          const double pr = model.Prob(rep, t);
          if (pr <= 0.0) continue;
          br.push_back({t, rep, pt * pr});
        }
      }
    }
    for (size_t i = 1; i < br.size(); ++i) {
      Run child = r;
      ApplyBranch(child, id, g, br[i]);
      stack.push_back(std::move(child));
    }
    if (br.empty()) {
      r.weight = 0.0;
      return;
    }
    ApplyBranch(r, id, g, br[0]);
  }

  void ApplyBranch(Run& r, NodeId id, const NativeGate& g, const Branch& b) {
    const NodeParams& node = Node(id);
    NodeRun& nr = r.node[Idx(id)];
    const double p = ProjectInPlace(r.state, g.target, b.t);
    if (p <= 0.0) throw StateError("measured branch has zero probability");
    r.frame[g.target] = 0.0;
    if (o_.mode == ExecMode::kExact) r.weight *= b.p;
    MeasurementRecord m;
    m.name = g.name;
    m.node = id;
    m.qubit = g.target;
    m.physical = b.t;
    m.reported = b.rep;
    m.destructive = g.destructive;
    m.time = nr.clock;
    double dur = g.duration;
    if (!g.destructive) {
      dur = b.rep ? node.durations.ro_mid_max : node.durations.ro_mid_stop;
      m.theta = ReadoutPhaseError(node, b.t, b.rep);
      if (m.theta != 0.0) Apply1(r.state, gates::Rz(m.theta), node.data());
    }
    m.duration = dur;
    r.leaf.reported[g.name] = b.rep;
    r.leaf.physical[g.name] = b.t;
    std::array<double, 2> at{kInf, kInf};
    at[Idx(id)] = nr.clock + dur;
    r.known_at[g.name] = at;
    r.leaf.measurements.push_back(m);
    if (o_.trace) {
      std::ostringstream w;
      w << "measure " << QubitName(g.target) << " -> " << g.name << '='
        << b.rep << " (physical " << b.t << ')';
      Trace(r, nr.clock, id, w.str());
    }
    nr.clock += dur;
    nr.pc++;
  }

  ExecLeaf Finish(Run& r) {
    if (o_.flush_frames) {
      for (int q = 0; q < kRegisterQubits; ++q) {
        if (r.frame[q] != 0.0) Apply1(r.state, gates::Rz(r.frame[q]), q);
        r.frame[q] = 0.0;
      }
    }
    r.leaf.weight = r.weight;
    r.leaf.state = r.state;
    r.leaf.end_time = {r.node[0].clock, r.node[1].clock};
    r.leaf.messages = r.net.log();
    return std::move(r.leaf);
  }

  const Engine& eng_;
  const ProtocolSetup& s_;
  const CompiledCircuit& c_;
  const ExecOptions& o_;
  RandomStream* rng_;
  double L_;
};

}  // namespace

std::vector<ExecLeaf> Engine::Execute(const CompiledCircuit& c,
                                      const ExecOptions& opts,
                                      RandomStream* rng) const {
  Executor ex(*this, c, opts, rng);
  return ex.RunAll();
}

ExecLeaf Engine::Sample(const CompiledCircuit& c, RandomStream& rng,
                        ExecOptions opts) const {
  opts.mode = ExecMode::kSample;
  auto leaves = Execute(c, opts, &rng);
  return std::move(leaves.front());
}

std::vector<ExecLeaf> Engine::Exact(const CompiledCircuit& c, int attempts,
                                    Detector d, ExecOptions opts) const {
  opts.mode = ExecMode::kExact;
  opts.forced_attempts = attempts;
  opts.forced_detector = d;
  return Execute(c, opts, nullptr);
}

}  // namespace qgt
