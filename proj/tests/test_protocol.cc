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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qgt/circuits/library.h"
#include "qgt/protocol/entanglement.h"
#include "qgt/protocol/executor.h"
#include "qgt/protocol/network.h"
#include "qgt/protocol/phase_frame.h"
#include "qgt/qstate/pauli.h"

using namespace qgt;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

HeraldModelParams Silent() {
  HeraldModelParams h;
  h.p_A = h.p_B = 0.0;
  h.dark_count_prob = 0.0;
  h.background_click_prob = 0.0;
  return h;
}

HeraldModelParams AlwaysClicks() {
  HeraldModelParams h = Silent();
  h.alpha_A = 1.0;
  h.p_A = 1.0;
  return h;
}

int IndexOf(const NodeProgram& p, GateKind k, const std::string& name = "") {
  for (size_t i = 0; i < p.gates.size(); ++i) {
    if (p.gates[i].kind == k && (name.empty() || p.gates[i].name == name)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("loop without clicks times out at n_max") {
  const ProtocolSetup s;
  for (LoopSampling m : {LoopSampling::kPerAttempt, LoopSampling::kAggregated}) {
    RandomStream rng(3);
    const LoopResult r =
        RunEntanglementLoop(s.alice, s.bob, Silent(), 50, rng, nullptr, m);
    CHECK(r.timeout);
    CHECK(r.attempts == 50);
    CHECK_FALSE(r.event.has_value());
    CHECK(r.data_phases[0] == Approx(50 * s.alice.phase_per_attempt));
  }
  ProtocolSetup z;
  z.herald = Silent();
  const Engine e(z);
  RandomStream rng(1);
  CHECK_THROWS_AS(e.Sample(CompileGhz(z.alice, z.bob, "ZZZZ"), rng),
                  ProtocolError);
}

TEST_CASE("certain click heralds on the first attempt") {
  const ProtocolSetup s;
  CHECK(ComputeHeraldProbabilities(AlwaysClicks()).single_click ==
        Approx(1.0));
  RandomStream rng(5);
  for (int i = 0; i < 20; ++i) {
    const LoopResult r = RunEntanglementLoop(s.alice, s.bob, AlwaysClicks(),
                                             50, rng);
    REQUIRE(r.event.has_value());
    CHECK_FALSE(r.timeout);
    CHECK(r.attempts == 1);
    CHECK(r.data_phases[0] * 180.0 / kPi == Approx(54.0));
  }
  ProtocolSetup one;
  one.herald = AlwaysClicks();
  const Engine e(one);
  RandomStream r2(9);
  const ExecLeaf l = e.Sample(CompileGhz(one.alice, one.bob, "ZZZZ"), r2);
  CHECK(l.attempts == 1);
  CHECK(l.retries == 0);
}

TEST_CASE("successful attempt index follows the truncated geometric law") {
  const double q = 0.03;
  const int n_max = 50;
  const double p = LoopSuccessProbability(q, n_max);
  CHECK(p == Approx(1.0 - std::pow(1.0 - q, n_max)));
  double mean = 0.0, m2 = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double w = q * std::pow(1.0 - q, n - 1) / p;
    mean += n * w;
    m2 += n * n * w;
  }
  const double sd = std::sqrt(m2 - mean * mean);
  RandomStream rng(17);
  const int samples = 20000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int n = SampleSuccessAttempt(q, n_max, rng);
    REQUIRE(n >= 1);
    REQUIRE(n <= n_max);
    sum += n;
  }
  CHECK(std::abs(sum / samples - mean) < 5.0 * sd / std::sqrt(samples));
}

TEST_CASE("timeout rounds follow the geometric law of loop failures") {
  const double q = 0.005;
  const double p = LoopSuccessProbability(q, 50);
  const double mean = (1.0 - p) / p;
  const double sd = std::sqrt(1.0 - p) / p;
  RandomStream rng(23);
  const int samples = 20000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) sum += double(SampleTimeoutRounds(q, 50, rng));
  CHECK(std::abs(sum / samples - mean) < 5.0 * sd / std::sqrt(samples));
}

TEST_CASE("aggregated and per-attempt loops agree on the click rate") {
  const ProtocolSetup s;
  HeraldModelParams h = s.herald;
  h.p_A *= 50.0;
  h.p_B *= 50.0;
  const double q = ComputeHeraldProbabilities(h).single_click;
  const double p = LoopSuccessProbability(q, 50);
  for (LoopSampling m : {LoopSampling::kPerAttempt, LoopSampling::kAggregated}) {
    RandomStream rng(31);
    const int samples = 4000;
    int ok = 0;
    for (int i = 0; i < samples; ++i) {
      const LoopResult r = RunEntanglementLoop(s.alice, s.bob, h, 50, rng,
                                               nullptr, m);
      if (!r.timeout) {
        ++ok;
        CHECK(r.attempts >= 1);
        CHECK(r.attempts <= 50);
        CHECK(r.event->sign == DetectorSign(r.event->detector));
      }
    }
    CHECK(std::abs(double(ok) / samples - p) <
          5.0 * std::sqrt(p * (1 - p) / samples));
  }
}

TEST_CASE("phase correction cancels the accumulated phase") {
  const NodeParams a = AliceDefaults();
  PhaseFrame f;
  CHECK(ApplyPhaseCorrection(f, 0, a, nullptr).correction == 0.0);
  PhaseFrame g;
  const PhaseCorrection c = ApplyPhaseCorrection(g, 10, a, nullptr);
  CHECK(c.correction * 180.0 / kPi == Approx(-180.0));
  CHECK(c.residual == 0.0);
  CHECK_THROWS_AS(ApplyPhaseCorrection(g, -1, a, nullptr),
                  std::invalid_argument);

  const NodeParams b = BobDefaults();
  CHECK(FrameModeFor(a) == FrameMode::kContinuous);
  CHECK(FrameModeFor(b) == FrameMode::kQuantized);
  const LookupTable t = CompileNodeTable(b, 50);
  PhaseFrame q;
  q.mode = FrameMode::kQuantized;
  CHECK_THROWS_AS(ApplyPhaseCorrection(q, 3, b, nullptr),
                  std::invalid_argument);
  for (int n = 1; n <= 50; ++n) {
    PhaseFrame h;
    h.mode = FrameMode::kQuantized;
    const PhaseCorrection pc = ApplyPhaseCorrection(h, n, b, &t);
    CHECK(std::abs(pc.residual) <= t.ResidualBound() + 1e-12);
    CHECK(std::abs(WrapSymmetric(pc.correction + n * b.phase_per_attempt -
                                 pc.residual)) < 1e-9);
    CHECK(pc.delay >= 2.8e-6);
    CHECK(pc.delay <= 3.2e-6);
  }
}

TEST_CASE("executor reports the quantized rephasing residual") {
  const ProtocolSetup s;
  const Engine e(s);
  REQUIRE(e.table(NodeId::kBob) != nullptr);
  CHECK(e.table(NodeId::kAlice) == nullptr);
  for (int n : {1, 7, 50}) {
    const auto leaves = e.Exact(CompileGhz(s.alice, s.bob, ""), n,
                                Detector::kD1);
    CHECK(leaves[0].rephase_residual[0] == 0.0);
    CHECK(leaves[0].rephase_residual[1] ==
          Approx(e.table(NodeId::kBob)->At(n).residual));
  }
}

TEST_CASE("network delivers in send order with the link latency") {
  Network net(1e-3);
  ClassicalMessage m;
  m.kind = MessageKind::kMidCircuitOutcome;
  m.sender = Endpoint::kAlice;
  m.receiver = Endpoint::kBob;
  m.name = "first";
  net.Send(m, 0.0);
  m.name = "second";
  net.Send(m, 0.5e-3);
  m.name = "third";
  net.Send(m, 0.5e-3);
  CHECK(net.NextDelivery(Endpoint::kBob) == Approx(1e-3));
  CHECK(std::isinf(net.NextDelivery(Endpoint::kAlice)));
  auto got = net.Deliver(Endpoint::kBob, 1.2e-3);
  REQUIRE(got.size() == 1);
  CHECK(got[0].name == "first");
  got = net.Deliver(Endpoint::kBob, 2e-3);
  REQUIRE(got.size() == 2);
  CHECK(got[0].name == "second");
  CHECK(got[1].name == "third");
  CHECK(got[1].delivery_time == Approx(1.5e-3));
  CHECK(net.log().size() == 3);
  CHECK(MessageKindName(MessageKind::kHeraldResult) == "herald_result");
  CHECK(EndpointName(Endpoint::kMidpoint) == "midpoint");
}

TEST_CASE("init synchronization aligns the start of the loop") {
  const auto off = SynchronizeInit({2e-3, 3e-3});
  REQUIRE(off.size() == 2);
  CHECK(off[0] == Approx(1e-3));
  CHECK(off[1] == 0.0);
  CHECK_THROWS_AS(SynchronizeInit({-1.0, 1.0}), std::invalid_argument);

  const ProtocolSetup s;
  const Engine e(s);
  RandomStream rng(2);
  for (int i = 0; i < 20; ++i) {
    const ExecLeaf l = e.Sample(CompileGhz(s.alice, s.bob, "XXXX"), rng);
    CHECK(l.loop_start[0] == l.loop_start[1]);
    CHECK(std::min(l.init_offset[0], l.init_offset[1]) == 0.0);
  }
}

TEST_CASE("barrier releases both nodes at the latest arrival plus latency") {
  ProtocolSetup s;
  s.latency = 4e-6;
  const Engine e(s);
  CompiledCircuit c;
  c.name = "barrier";
  c.alice.gates = {Mw(kAliceComm, 0, kPi, 5e-6), Barrier("b"),
                   Mw(kAliceComm, 0, kPi, 1e-6)};
  c.bob.gates = {Mw(kBobComm, 0, kPi, 1e-6), Barrier("b"),
                 Mw(kBobComm, 0, kPi, 1e-6)};
  RandomStream rng(1);
  const ExecLeaf l = e.Sample(c, rng);
  CHECK(l.gate_times[0][2] == Approx(9e-6));
  CHECK(l.gate_times[1][2] == Approx(9e-6));
}

TEST_CASE("herald sign is exposed as the herald_minus bit") {
  const ProtocolSetup s;
  const Engine e(s);
  const CompiledCircuit c = CompileGhz(s.alice, s.bob, "ZZZZ");
  for (const auto& l : e.Exact(c, 4, Detector::kD1)) {
    CHECK(l.Reported(kHeraldMinus) == 0);
  }
  for (const auto& l : e.Exact(c, 4, Detector::kD2)) {
    CHECK(l.Reported(kHeraldMinus) == 1);
  }
  RandomStream rng(8);
  for (int i = 0; i < 30; ++i) {
    const ExecLeaf l = e.Sample(c, rng);
    CHECK(l.Reported(kHeraldMinus) == (l.detector == Detector::kD2 ? 1 : 0));
  }
}

TEST_CASE("feed-forward waits for the mid-circuit outcome message") {
  ProtocolSetup s;
  s.latency = 1e-3;
  const Engine e(s);
  const CompiledCircuit c = CompileTeleportedCnot(
      s.alice, s.bob, InitState::kPlusZ, InitState::kPlusZ, "ZZ");
  RandomStream rng(4);
  const ExecLeaf l = e.Sample(c, rng);
  const ClassicalMessage* ma = nullptr;
  for (const auto& m : l.messages) {
    if (m.name == kMidA) ma = &m;
  }
  REQUIRE(ma != nullptr);
  CHECK(ma->kind == MessageKind::kMidCircuitOutcome);
  CHECK(ma->sender == Endpoint::kAlice);
  CHECK(ma->receiver == Endpoint::kBob);
  CHECK(ma->payload == std::vector<int>{l.Reported(kMidA)});
  CHECK(ma->delivery_time == Approx(ma->send_time + 1e-3));
  const int cond = IndexOf(c.bob, GateKind::kPauli);
  REQUIRE(cond >= 0);
  CHECK(l.gate_times[1][cond] >= ma->delivery_time - 1e-12);
}

TEST_CASE("conditioned gates are skipped when the bit does not match") {
  const ProtocolSetup s = [] {
    ProtocolSetup x;
    x.noise = NoiseToggles::AllOff();
    return x;
  }();
  const Engine e(s);
  for (int want : {0, 1}) {
    CompiledCircuit c;
    c.alice.gates = {Mw(kAliceComm, 0, want ? kPi : 0.0, 1e-6),
                     Measure(kAliceComm, "m", false, 1e-6),
                     When(Rf(kAliceData, 0, kPi, 1e-6), "m", 1)};
    for (const auto& l : e.Exact(c, 1, Detector::kD1)) {
      CHECK(l.Reported("m") == want);
      const int q[1] = {kAliceData};
      CHECK(Expectation(PartialTrace(l.state, q), PauliString("Z")) ==
            Approx(want ? -1.0 : 1.0));
    }
  }
}

TEST_CASE("mid-circuit readout with feed-forward") {
  const NodeParams a = AliceDefaults();
  RandomStream rng(12);
  // |1> reads 1 and is flipped back to |0>.
  DensityMatrix reg(kRegisterQubits);
  Apply1(reg, gates::X(), kAliceComm);
  MidCircuitResult r =
      MidCircuitMeasureAndFeedforward(reg, a, 'Z', rng, false);
  CHECK(r.reported == 1);
  CHECK(r.physical == 1);
  CHECK(r.theta == 0.0);
  CHECK(r.duration == Approx(190e-6));
  CHECK(ProbabilityOfOne(reg, kAliceComm) == Approx(0.0).margin(1e-12));

  // |+> measured in X reads 0 with the short duration.
  DensityMatrix plus(kRegisterQubits);
  Apply1(plus, gates::H(), kAliceComm);
  r = MidCircuitMeasureAndFeedforward(plus, a, 'X', rng, false);
  CHECK(r.reported == 0);
  CHECK(r.duration == Approx(20e-6));

  CHECK_THROWS_AS(MidCircuitMeasureAndFeedforward(plus, a, 'Q', rng, false),
                  std::invalid_argument);

  // Misassigned 0 leaves a phase on the data qubit.
  const PrecessionFrequencies w = a.Omegas();
  const double theta = ReadoutPhaseError(a, 0, 1);
  CHECK(theta == Approx((w.omega_0 - w.omega_1) * 190e-6));
  CHECK(ReadoutPhaseError(a, 1, 0) ==
        Approx((w.omega_1 - w.omega_0) * 20e-6));
  int seen = 0;
  for (int i = 0; i < 200 && !seen; ++i) {
    DensityMatrix st(kRegisterQubits);
    Apply1(st, gates::H(), kAliceData);
    r = MidCircuitMeasureAndFeedforward(st, a, 'Z', rng, true);
    if (r.physical == 0 && r.reported == 1) {
      seen = 1;
      CHECK(r.theta == Approx(theta));
      const int q[1] = {kAliceData};
      CHECK(Expectation(PartialTrace(st, q), PauliString("X")) ==
            Approx(std::cos(theta)).margin(1e-9));
      CHECK(ProbabilityOfOne(st, kAliceComm) == Approx(1.0));
    }
  }
  CHECK(seen == 1);
}

TEST_CASE("exact branches are normalized and sampled runs are complete") {
  const ProtocolSetup s;
  const Engine e(s);
  const CompiledCircuit c = CompileGhz(s.alice, s.bob, "XYXY");
  for (int n : {1, 50}) {
    double w = 0.0;
    for (const auto& l : e.Exact(c, n, Detector::kD2)) w += l.weight;
    CHECK(w == Approx(1.0).margin(1e-12));
  }
  RandomStream rng(99);
  for (int i = 0; i < 200; ++i) {
    const ExecLeaf l = e.Sample(c, rng);
    CHECK(l.attempts >= 1);
    CHECK(l.attempts <= s.n_max);
    for (const char* b : {kDataA, kMidA, kMidB, kDataB}) {
      CHECK_NOTHROW(l.Reported(b));
    }
    CHECK(l.end_time[0] > l.loop_start[0]);
    l.state.Validate();
  }
}

TEST_CASE("timeout rounds re-run initialization and add loop time") {
  ProtocolSetup s;
  s.herald.p_A /= 20.0;
  s.herald.p_B /= 20.0;
  s.herald.background_click_prob /= 20.0;
  const Engine e(s);
  const double L = s.AttemptDuration();
  RandomStream rng(6);
  int with_retry = 0;
  for (int i = 0; i < 100; ++i) {
    const ExecLeaf l =
        e.Sample(CompileGhz(s.alice, s.bob, "ZZZZ"), rng);
    if (l.retries > 0) {
      ++with_retry;
      CHECK(l.loop_start[0] >= double(l.retries) * s.n_max * L);
    }
  }
  CHECK(with_retry > 50);
}

TEST_CASE("setup validation and noise toggles") {
  ProtocolSetup s;
  CHECK(s.AttemptDuration() == Approx(s.alice.AttemptDuration()));
  CHECK_NOTHROW(s.Validate());
  s.bob.tau *= 1.01;
  CHECK_THROWS_AS(s.AttemptDuration(), ProtocolError);
  CHECK_THROWS(Engine(s));

  NoiseToggles t;
  for (const auto& n : NoiseToggles::Names()) {
    t.Set(n, false);
    CHECK_FALSE(t.Get(n));
  }
  CHECK_THROWS_AS(t.Set("cosmic_rays", true), std::invalid_argument);
  CHECK_THROWS_AS(t.Get("cosmic_rays"), std::invalid_argument);
  const NoiseToggles off = NoiseToggles::AllOff();
  for (const auto& n : NoiseToggles::Names()) CHECK_FALSE(off.Get(n));
}
