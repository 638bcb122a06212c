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

#include "qgt/circuits/library.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgt {

namespace {

constexpr double kPi = std::numbers::pi;

void CheckBasis(char b) {
  if (b != 'X' && b != 'Y' && b != 'Z') {
    throw std::invalid_argument(std::string("unknown basis '") + b + "'");
  }
}

void Append(std::vector<NativeGate>& dst, const std::vector<NativeGate>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

// Unconditional data rotation: RF drive for DDRF, decoupling gate for DD.
NativeGate DataRot(const NodeParams& n, double axis, double angle) {
  return Rf(n.data(), axis, angle, n.durations.uncond_gate);
}

// Hadamard as frame Z(pi) followed by Ry(pi/2).
void AppendDataHadamard(std::vector<NativeGate>& g, const NodeParams& n) {
  g.push_back(Frame(n.data(), kPi));
  g.push_back(DataRot(n, kPi / 2, kPi / 2));
}

void AppendCommHadamard(std::vector<NativeGate>& g, const NodeParams& n) {
  g.push_back(Frame(n.comm(), kPi));
  g.push_back(Mw(n.comm(), kPi / 2, kPi / 2, n.durations.mw_pi2));
}

// CNOT(comm -> data) = S_dag(comm) CR(0) Rx_data(-pi/2).
void AppendCnotCommToData(std::vector<NativeGate>& g, const NodeParams& n) {
  g.push_back(DataRot(n, 0.0, -kPi / 2));
  g.push_back(Cond(n.comm(), n.data(), 0.0, n.durations.cond_gate,
                   GateTag::kLocalEntangle));
  g.push_back(Frame(n.comm(), -kPi / 2));
}

std::vector<NativeGate> SignFixAndFlip(const NodeParams& a) {
  return {When(Frame(a.comm(), kPi), kHeraldMinus),
          Mw(a.comm(), 0.0, kPi, a.durations.mw_pi)};
}

}  // namespace

InitState ParseInitState(const std::string& s) {
  for (InitState st : kAllInitStates) {
    if (InitStateName(st) == s) return st;
  }
  throw std::invalid_argument("unknown target state '" + s + "'");
}

std::string InitStateName(InitState s) {
  switch (s) {
    case InitState::kPlusZ: return "+Z";
    case InitState::kMinusZ: return "-Z";
    case InitState::kPlusX: return "+X";
    case InitState::kMinusX: return "-X";
    case InitState::kPlusY: return "+Y";
    case InitState::kMinusY: return "-Y";
  }
  return "?";
}

Vec InitStateVector(InitState s) {
  const double r = 1.0 / std::sqrt(2.0);
  Vec v(2);
  switch (s) {
    case InitState::kPlusZ: v << 1.0, 0.0; break;
    case InitState::kMinusZ: v << 0.0, 1.0; break;
    case InitState::kPlusX: v << r, r; break;
    case InitState::kMinusX: v << r, -r; break;
    case InitState::kPlusY: v << r, cd(0.0, r); break;
    case InitState::kMinusY: v << r, cd(0.0, -r); break;
  }
  return v;
}

std::vector<NativeGate> InitDataGates(InitState target, const NodeParams& n) {
  const int c = n.comm(), d = n.data();
  const GateDurations& t = n.durations;
  std::vector<NativeGate> g = {
      Reset(c, t.reset),
      Mw(c, kPi / 2, kPi / 2, t.mw_pi2),
      Cond(c, d, 0.0, t.cond_gate),
      Mw(c, kPi, kPi / 2, t.mw_pi2),
      Cond(c, d, kPi / 2, t.cond_gate),
      Reset(c, t.reset),
  };
  double psi = 0.0;
  switch (target) {
    case InitState::kPlusZ:
      break;
    case InitState::kMinusZ:
      g.push_back(DataRot(n, 0.0, kPi));
      break;
    case InitState::kPlusX: psi = 0.0; break;
    case InitState::kMinusX: psi = kPi; break;
    case InitState::kPlusY: psi = kPi / 2; break;
    case InitState::kMinusY: psi = -kPi / 2; break;
  }
  if (target != InitState::kPlusZ && target != InitState::kMinusZ) {
    if (n.control_method == ControlMethod::kDdrf) {
      // RF rotation about the axis 90 degrees ahead of the target azimuth.
      g.push_back(DataRot(n, psi + kPi / 2, kPi / 2));
    } else {
      // Conditional gate with the electron in |0>: Rx(pi/2) to -Y, then a
      // phase gate to the target azimuth.
      g.push_back(Cond(c, d, 0.0, t.cond_gate));
      g.push_back(Frame(d, psi + kPi / 2));
    }
  }
  g.back().tag = GateTag::kInitDone;
  return g;
}

CompiledCircuit InitDataQubit(InitState target, const NodeParams& node) {
  CompiledCircuit c;
  c.name = "init_" + InitStateName(target);
  c.Program(node.node_id).gates = InitDataGates(target, node);
  c.Validate();
  return c;
}

std::vector<NativeGate> AssistedReadoutGates(char basis, const NodeParams& n,
                                             const std::string& bit) {
  CheckBasis(basis);
  const int c = n.comm(), d = n.data();
  const GateDurations& t = n.durations;
  std::vector<NativeGate> g;
  if (basis == 'Y') {
    g.push_back(Frame(d, -kPi / 2));
  } else if (basis == 'Z') {
    if (n.control_method == ControlMethod::kDdrf) {
      g.push_back(DataRot(n, kPi / 2, kPi / 2));
    } else {
      g.push_back(Cond(c, d, kPi / 2, t.cond_gate));
    }
  }
  g.push_back(Mw(c, kPi / 2, kPi / 2, t.mw_pi2));
  g.push_back(Cond(c, d, 0.0, t.cond_gate, GateTag::kReadoutMap));
  g.push_back(Mw(c, 0.0, kPi / 2, t.mw_pi2));
  g.push_back(Measure(c, bit, /*destructive=*/true, t.ro_final));
  return g;
}

CompiledCircuit AssistedReadout(char basis, const NodeParams& node) {
  CompiledCircuit c;
  c.name = std::string("readout_") + basis;
  c.Program(node.node_id).gates = AssistedReadoutGates(
      basis, node, node.node_id == NodeId::kAlice ? kDataA : kDataB);
  c.Validate();
  return c;
}

std::vector<NativeGate> MidCircuitGates(char basis, const NodeParams& n,
                                        const std::string& bit) {
  CheckBasis(basis);
  const int c = n.comm();
  std::vector<NativeGate> g;
  if (basis == 'X') g.push_back(Mw(c, kPi / 2, -kPi / 2, n.durations.mw_pi2));
  if (basis == 'Y') g.push_back(Mw(c, 0.0, kPi / 2, n.durations.mw_pi2));
  g.push_back(Measure(c, bit, /*destructive=*/false, n.durations.ro_mid_max));
  g.push_back(When(Mw(c, 0.0, kPi, n.durations.mw_pi), bit, 1));
  return g;
}

CompiledCircuit CompileGhz(const NodeParams& a, const NodeParams& b,
                           const std::string& setting) {
  if (!setting.empty() && setting.size() != 4) {
    throw std::invalid_argument("GHZ setting needs four bases");
  }
  CompiledCircuit c;
  c.name = "ghz" + (setting.empty() ? "" : "_" + setting);
  auto& ga = c.alice.gates;
  auto& gb = c.bob.gates;

  ga = InitDataGates(InitState::kPlusX, a);
  ga.push_back(Entangle(kHerald, 0));
  ga.push_back(Rephase(a.data()));
  Append(ga, SignFixAndFlip(a));
  ga.push_back(Cond(a.comm(), a.data(), kPi / 2, a.durations.cond_gate,
                    GateTag::kLocalEntangle));
  ga.push_back(Frame(a.data(), kPi));

  gb = InitDataGates(InitState::kPlusX, b);
  gb.push_back(Entangle(kHerald, 0));
  gb.push_back(Rephase(b.data()));
  gb.push_back(Cond(b.comm(), b.data(), kPi / 2, b.durations.cond_gate,
                    GateTag::kLocalEntangle));

  if (!setting.empty()) {
    Append(ga, MidCircuitGates(setting[1], a, kMidA));
    Append(ga, AssistedReadoutGates(setting[0], a, kDataA));
    Append(gb, MidCircuitGates(setting[2], b, kMidB));
    Append(gb, AssistedReadoutGates(setting[3], b, kDataB));
  }
  c.Validate();
  return c;
}

CompiledCircuit CompileTeleportedCnot(const NodeParams& a, const NodeParams& b,
                                      InitState in_a, InitState in_b,
                                      const std::string& data_bases) {
  if (!data_bases.empty() && data_bases.size() != 2) {
    throw std::invalid_argument("CNOT tomography needs two bases");
  }
  CompiledCircuit c;
  c.name = "cnot_" + InitStateName(in_a) + InitStateName(in_b) +
           (data_bases.empty() ? "" : "_" + data_bases);
  auto& ga = c.alice.gates;
  auto& gb = c.bob.gates;

  // Alice: the data Hadamards are moved next to init and mid-circuit readout.
  ga = InitDataGates(in_a, a);
  AppendDataHadamard(ga, a);
  ga.push_back(Entangle(kHerald, 0));
  ga.push_back(Rephase(a.data()));
  Append(ga, SignFixAndFlip(a));
  AppendCommHadamard(ga, a);
  AppendCnotCommToData(ga, a);
  AppendCommHadamard(ga, a);
  ga.push_back(Measure(a.comm(), kMidA, false, a.durations.ro_mid_max));
  ga.push_back(When(Mw(a.comm(), 0.0, kPi, a.durations.mw_pi), kMidA, 1));
  ga.push_back(Send(kMidA));
  AppendDataHadamard(ga, a);
  ga.push_back(When(Frame(a.data(), kPi), kMidB, 1));

  gb = InitDataGates(in_b, b);
  gb.push_back(Entangle(kHerald, 0));
  gb.push_back(Rephase(b.data()));
  AppendCnotCommToData(gb, b);
  Append(gb, MidCircuitGates('X', b, kMidB));
  gb.push_back(Send(kMidB));
  gb.push_back(When(PauliGate(b.data(), 'X'), kMidA, 1));

  if (!data_bases.empty()) {
    Append(ga, AssistedReadoutGates(data_bases[0], a, kDataA));
    Append(gb, AssistedReadoutGates(data_bases[1], b, kDataB));
  }
  c.Validate();
  return c;
}

CompiledCircuit CompileEntangledStateOnly(const NodeParams& a,
                                          const NodeParams& b,
                                          const std::string& comm_bases) {
  if (comm_bases.size() != 2) {
    throw std::invalid_argument("entangled-state readout needs two bases");
  }
  CompiledCircuit c;
  c.name = "entangled_" + comm_bases;
  auto& ga = c.alice.gates;
  auto& gb = c.bob.gates;
  ga.push_back(Entangle(kHerald, 0));
  ga.push_back(When(Frame(a.comm(), kPi), kHeraldMinus));
  gb.push_back(Entangle(kHerald, 0));
  auto readout = [](char basis, const NodeParams& n, const std::string& bit) {
    std::vector<NativeGate> g = MidCircuitGates(basis, n, bit);
    g.pop_back();  // no flip after a destructive readout
    g.back().destructive = true;
    g.back().duration = n.durations.ro_final;
    return g;
  };
  Append(ga, readout(comm_bases[0], a, kCommA));
  Append(gb, readout(comm_bases[1], b, kCommB));
  c.Validate();
  return c;
}

}  // namespace qgt
