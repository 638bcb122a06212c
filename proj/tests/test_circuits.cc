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
#include <random>

#include "qgt/calib/correlators.h"
#include "qgt/circuits/fold.h"
#include "qgt/circuits/library.h"
#include "qgt/protocol/executor.h"
#include "qgt/qstate/pauli.h"

using namespace qgt;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ProtocolSetup Noiseless() {
  ProtocolSetup s;
  s.noise = NoiseToggles::AllOff();
  return s;
}

// Weighted sum of the leaf states.
DensityMatrix Mixture(const std::vector<ExecLeaf>& leaves) {
  Mat m = Mat::Zero(16, 16);
  for (const auto& l : leaves) m += l.weight * l.state.matrix();
  return DensityMatrix(kRegisterQubits, m);
}

DensityMatrix DataState(const std::vector<ExecLeaf>& leaves, int q) {
  const int keep[1] = {q};
  return PartialTrace(Mixture(leaves), keep);
}

// Expectation of (-1)^(sum of reported bits).
double ParityExpectation(const std::vector<ExecLeaf>& leaves,
                         const std::vector<std::string>& bits) {
  double e = 0.0;
  for (const auto& l : leaves) {
    int par = 0;
    for (const auto& b : bits) par ^= l.Reported(b);
    e += l.weight * (par ? -1.0 : 1.0);
  }
  return e;
}

Vec Kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  }
  return out;
}

}  // namespace

TEST_CASE("noiseless data-qubit initialization reaches every target") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  for (const NodeParams* n : {&s.alice, &s.bob}) {
    for (InitState st : kAllInitStates) {
      const auto leaves = e.Exact(InitDataQubit(st, *n), 1, Detector::kD1);
      const DensityMatrix rho = DataState(leaves, n->data());
      INFO(NodeName(n->node_id) << " " << InitStateName(st));
      CHECK(Fidelity(rho, InitStateVector(st)) == Approx(1.0).margin(1e-9));
      const int comm[1] = {n->comm()};
      CHECK(Fidelity(PartialTrace(Mixture(leaves), comm),
                     InitStateVector(InitState::kPlusZ)) ==
            Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("swap initialization forgets the previous data state") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 5; ++rep) {
    Vec psi(16);
    for (int i = 0; i < 16; ++i) psi(i) = cd(nd(gen), nd(gen));
    psi.normalize();
    ExecOptions o;
    o.initial = DensityMatrix::FromPure(psi);
    const auto leaves =
        e.Exact(InitDataQubit(InitState::kPlusY, s.alice), 1, Detector::kD1, o);
    CHECK(Fidelity(DataState(leaves, kAliceData),
                   InitStateVector(InitState::kPlusY)) ==
          Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("-X preparation equals +X followed by a Z(pi) frame") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  for (const NodeParams* n : {&s.alice, &s.bob}) {
    CompiledCircuit plus = InitDataQubit(InitState::kPlusX, *n);
    plus.Program(n->node_id).gates.push_back(Frame(n->data(), kPi));
    const CompiledCircuit minus = InitDataQubit(InitState::kMinusX, *n);
    const DensityMatrix a = DataState(e.Exact(plus, 1, Detector::kD1), n->data());
    const DensityMatrix b =
        DataState(e.Exact(minus, 1, Detector::kD1), n->data());
    CHECK((a.matrix() - b.matrix()).norm() < 1e-9);
  }
}

TEST_CASE("init noise gives the per-node average preparation fidelity") {
  ProtocolSetup s = Noiseless();
  s.noise.init = true;
  const Engine e(s);
  for (const NodeParams* n : {&s.alice, &s.bob}) {
    double avg = 0.0;
    for (InitState st : kAllInitStates) {
      const auto leaves = e.Exact(InitDataQubit(st, *n), 1, Detector::kD1);
      avg += Fidelity(DataState(leaves, n->data()), InitStateVector(st)) / 6.0;
    }
    CHECK(avg == Approx(n->init_fidelity_target).margin(1e-9));
  }
  CHECK(s.alice.init_fidelity_target == 0.85);
  CHECK(s.bob.init_fidelity_target == 0.96);
}

TEST_CASE("assisted readout maps eigenstates to deterministic outcomes") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  const std::pair<char, InitState> cases[] = {
      {'Z', InitState::kPlusZ}, {'Z', InitState::kMinusZ},
      {'X', InitState::kPlusX}, {'X', InitState::kMinusX},
      {'Y', InitState::kPlusY}, {'Y', InitState::kMinusY}};
  for (const NodeParams* n : {&s.alice, &s.bob}) {
    const std::string bit = n->node_id == NodeId::kAlice ? kDataA : kDataB;
    for (const auto& [basis, st] : cases) {
      CompiledCircuit c;
      auto& g = c.Program(n->node_id).gates;
      g = InitDataGates(st, *n);
      const auto ro = AssistedReadoutGates(basis, *n, bit);
      g.insert(g.end(), ro.begin(), ro.end());
      const double want = (st == InitState::kPlusZ || st == InitState::kPlusX ||
                           st == InitState::kPlusY)
                              ? 1.0
                              : -1.0;
      INFO(NodeName(n->node_id) << " " << basis << " " << InitStateName(st));
      CHECK(ParityExpectation(e.Exact(c, 1, Detector::kD1), {bit}) ==
            Approx(want).margin(1e-9));
    }
  }
}

TEST_CASE("mapping infidelity scales the readout contrast by C_en") {
  ProtocolSetup s = Noiseless();
  s.noise.mapping = true;
  const Engine e(s);
  for (const NodeParams* n : {&s.alice, &s.bob}) {
    const std::string bit = n->node_id == NodeId::kAlice ? kDataA : kDataB;
    for (char basis : {'X', 'Z'}) {
      CompiledCircuit c;
      auto& g = c.Program(n->node_id).gates;
      g = InitDataGates(basis == 'Z' ? InitState::kPlusZ : InitState::kPlusX,
                        *n);
      const auto ro = AssistedReadoutGates(basis, *n, bit);
      g.insert(g.end(), ro.begin(), ro.end());
      const double c_en = n->MappingContrast();
      CHECK(c_en < 1.0);
      CHECK(ParityExpectation(e.Exact(c, 1, Detector::kD1), {bit}) ==
            Approx(c_en).margin(1e-9));
    }
  }
}

TEST_CASE("phase folding without frames leaves the circuit unchanged") {
  CompiledCircuit c;
  c.alice.gates = {Mw(kAliceComm, 0.3, kPi / 2, 1e-6),
                   Rf(kAliceData, 1.1, kPi, 1e-6),
                   Cond(kAliceComm, kAliceData, 0.7, 1e-6)};
  const FoldedCircuit f = FoldPhaseGates(c);
  REQUIRE(f.circuit.alice.gates.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(f.circuit.alice.gates[i].axis == c.alice.gates[i].axis);
  }
  for (double fr : f.residual_frames) CHECK(fr == 0.0);
}

TEST_CASE("a pi frame rotates the axis of the next pulse") {
  CompiledCircuit c;
  c.alice.gates = {Frame(kAliceComm, kPi), Mw(kAliceComm, 0.0, kPi / 2, 1e-6)};
  const FoldedCircuit f = FoldPhaseGates(c);
  REQUIRE(f.circuit.alice.gates.size() == 1);
  CHECK(std::cos(f.circuit.alice.gates[0].axis) == Approx(-1.0));
  CHECK(f.residual_frames[kAliceComm] == Approx(kPi));
}

TEST_CASE("a frame update with no later rotation is rejected") {
  CompiledCircuit c;
  c.name = "dangling";
  c.alice.gates = {Mw(kAliceComm, 0.0, kPi / 2, 1e-6), Frame(kAliceData, 0.4)};
  CHECK_THROWS_AS(FoldPhaseGates(c), std::logic_error);
}

TEST_CASE("folded random sequences match explicit Rz gates") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int rep = 0; rep < 50; ++rep) {
    CompiledCircuit c;
    auto& g = c.alice.gates;
    for (int i = 0; i < 12; ++i) {
      const int q = (i % 2) ? kAliceData : kAliceComm;
      switch (kind(gen)) {
        case 0: g.push_back(Frame(q, ang(gen))); break;
        case 1: g.push_back(Mw(kAliceComm, ang(gen), ang(gen), 0.0)); break;
        case 2: g.push_back(Rf(kAliceData, ang(gen), ang(gen), 0.0)); break;
        default: g.push_back(Cond(kAliceComm, kAliceData, ang(gen), 0.0));
      }
    }
    g.push_back(Mw(kAliceComm, 0.0, 0.1, 0.0));
    g.push_back(Rf(kAliceData, 0.0, 0.1, 0.0));

    // Reference: frames as Rz on the logical state.
    DensityMatrix ref(kRegisterQubits);
    Apply1(ref, gates::H(), kAliceComm);
    Apply1(ref, gates::Ry(0.4), kAliceData);
    DensityMatrix folded = ref;
    auto apply = [](DensityMatrix& st, const NativeGate& x) {
      const int cd_pair[2] = {kAliceComm, kAliceData};
      switch (x.kind) {
        case GateKind::kPhaseFrame: Apply1(st, gates::Rz(x.angle), x.target); break;
        case GateKind::kCondRotation:
          ApplyUnitaryInPlace(st, gates::ConditionalRotation(x.axis), cd_pair);
          break;
        default: Apply1(st, gates::Rxy(x.axis, x.angle), x.target);
      }
    };
    for (const auto& x : g) apply(ref, x);
    const FoldedCircuit f = FoldPhaseGates(c);
    for (const auto& x : f.circuit.alice.gates) {
      CHECK(x.kind != GateKind::kPhaseFrame);
      apply(folded, x);
    }
    for (int q = 0; q < kRegisterQubits; ++q) {
      Apply1(folded, gates::Rz(f.residual_frames[q]), q);
    }
    CHECK((ref.matrix() - folded.matrix()).norm() < 1e-9);
  }
}

TEST_CASE("software frames and explicit Rz gates give the same states") {
  const ProtocolSetup s;  // default noise
  const Engine e(s);
  std::vector<CompiledCircuit> circuits;
  circuits.push_back(CompileGhz(s.alice, s.bob, ""));
  circuits.push_back(CompileGhz(s.alice, s.bob, "XYXY"));
  circuits.push_back(
      CompileTeleportedCnot(s.alice, s.bob, InitState::kPlusX,
                            InitState::kMinusZ, ""));
  circuits.push_back(CompileTeleportedCnot(s.alice, s.bob, InitState::kPlusY,
                                           InitState::kPlusX, "YX"));
  circuits.push_back(CompileEntangledStateOnly(s.alice, s.bob, "XY"));
  for (const auto& c : circuits) {
    for (Detector d : {Detector::kD1, Detector::kD2}) {
      ExecOptions ex;
      ex.explicit_frames = true;
      const auto a = e.Exact(c, 17, d);
      const auto b = e.Exact(c, 17, d, ex);
      INFO(c.name);
      REQUIRE(a.size() == b.size());
      CHECK((Mixture(a).matrix() - Mixture(b).matrix()).norm() < 1e-9);
      for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].weight == Approx(b[i].weight).margin(1e-12));
        CHECK(a[i].reported == b[i].reported);
      }
    }
  }
}

TEST_CASE("teleported CNOT truth table") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  const InitState z[2] = {InitState::kPlusZ, InitState::kMinusZ};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto leaves = e.Exact(
          CompileTeleportedCnot(s.alice, s.bob, z[a], z[b], "ZZ"), 5,
          Detector::kD2);
      double p = 0.0;
      for (const auto& l : leaves) {
        if (l.Reported(kDataA) == a && l.Reported(kDataB) == (a ^ b)) {
          p += l.weight;
        }
      }
      INFO(a << b);
      CHECK(p == Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("teleported CNOT process over product Pauli eigenstates") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  const InitState in[4] = {InitState::kPlusZ, InitState::kMinusZ,
                           InitState::kPlusX, InitState::kPlusY};
  Eigen::Matrix4cd cnot = gates::Cnot();
  for (InitState a : in) {
    for (InitState b : in) {
      const Vec want = cnot * Kron(InitStateVector(a), InitStateVector(b));
      for (Detector d : {Detector::kD1, Detector::kD2}) {
        for (int n : {1, 33}) {
          const auto leaves = e.Exact(
              CompileTeleportedCnot(s.alice, s.bob, a, b, ""), n, d);
          const int keep[2] = {kAliceData, kBobData};
          for (const auto& l : leaves) {
            if (l.weight < 1e-12) continue;
            INFO(InitStateName(a) << InitStateName(b) << " n=" << n);
            CHECK(Fidelity(PartialTrace(l.state, keep), want) ==
                  Approx(1.0).margin(1e-9));
          }
        }
      }
    }
  }
}

TEST_CASE("noiseless GHZ state has unit fidelity before readout") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  const Vec ghz = GhzTarget();
  for (Detector d : {Detector::kD1, Detector::kD2}) {
    for (int n : {1, 2, 27, 50}) {
      const auto leaves = e.Exact(CompileGhz(s.alice, s.bob, ""), n, d);
      CHECK(Fidelity(Mixture(leaves), ghz) == Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("noiseless GHZ stabilizer estimate is one") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  double f = 0.0;
  for (const auto& [op, sign] : GhzStabilizers()) {
    std::string setting = op.str();
    for (char& ch : setting) {
      if (ch == 'I') ch = 'Z';
    }
    std::vector<std::string> bits;
    const char* names[4] = {kDataA, kMidA, kMidB, kDataB};
    for (int q = 0; q < 4; ++q) {
      if (op[q] != 'I') bits.push_back(names[q]);
    }
    f += sign *
         ParityExpectation(e.Exact(CompileGhz(s.alice, s.bob, setting), 9,
                                   Detector::kD2),
                           bits);
  }
  CHECK(f / 16.0 == Approx(1.0).margin(1e-9));
}

TEST_CASE("entangled-state readout sees Psi+") {
  const ProtocolSetup s = Noiseless();
  const Engine e(s);
  for (Detector d : {Detector::kD1, Detector::kD2}) {
    const double xx = ParityExpectation(
        e.Exact(CompileEntangledStateOnly(s.alice, s.bob, "XX"), 3, d),
        {kCommA, kCommB});
    const double yy = ParityExpectation(
        e.Exact(CompileEntangledStateOnly(s.alice, s.bob, "YY"), 3, d),
        {kCommA, kCommB});
    const double zz = ParityExpectation(
        e.Exact(CompileEntangledStateOnly(s.alice, s.bob, "ZZ"), 3, d),
        {kCommA, kCommB});
    CHECK(xx == Approx(1.0).margin(1e-9));
    CHECK(yy == Approx(1.0).margin(1e-9));
    CHECK(zz == Approx(-1.0).margin(1e-9));
  }
}

TEST_CASE("circuit validation rejects malformed programs") {
  const ProtocolSetup s;
  CompiledCircuit c;
  c.alice.gates = {Barrier("b")};
  c.bob.gates = {Wait(1e-6)};
  CHECK_THROWS_AS(c.Validate(), std::logic_error);
  c.bob.gates = {Barrier("b")};
  CHECK_NOTHROW(c.Validate());
  c.alice.gates.push_back(When(Mw(kAliceComm, 0, kPi, 1e-6), "nope"));
  CHECK_THROWS_AS(c.Validate(), std::logic_error);
  CHECK_THROWS_AS(CompileGhz(s.alice, s.bob, "XX"), std::invalid_argument);
  CHECK_THROWS_AS(CompileGhz(s.alice, s.bob, "XQXY"), std::invalid_argument);
  CHECK_THROWS_AS(ParseInitState("+W"), std::invalid_argument);
}
