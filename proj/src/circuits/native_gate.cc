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

#include "qgt/circuits/native_gate.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgt {

bool NativeGate::IsPhysical() const {
  switch (kind) {
    case GateKind::kMwRotation:
    case GateKind::kRfRotation:
    case GateKind::kCondRotation:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> CompiledCircuit::DeclaredBits() const {
  std::vector<std::string> out;
  for (const NodeProgram* p : {&alice, &bob}) {
    for (const NativeGate& g : p->gates) {
      if (g.kind == GateKind::kMeasure) out.push_back(g.name);
      if (g.kind == GateKind::kEntangle) out.push_back(g.name + "_minus");
    }
  }
  return out;
}

void CompiledCircuit::Validate() const {
  auto sync_points = [](const NodeProgram& p) {
    std::vector<std::string> s;
    for (const NativeGate& g : p.gates) {
      if (g.kind == GateKind::kBarrier || g.kind == GateKind::kEntangle) {
        s.push_back(KindName(g.kind) + ":" + g.name);
      }
    }
    return s;
  };
  const bool two_node = !alice.gates.empty() && !bob.gates.empty();
  if (two_node && sync_points(alice) != sync_points(bob)) {
    throw std::logic_error("circuit " + name +
                           ": barriers differ between the node programs");
  }
  const auto bits = DeclaredBits();
  const std::set<std::string> declared(bits.begin(), bits.end());
  std::set<std::string> sent;
  for (const NodeProgram* p : {&alice, &bob}) {
    for (size_t i = 0; i < p->gates.size(); ++i) {
      const NativeGate& g = p->gates[i];
      if (g.kind == GateKind::kSend) {
        if (!declared.count(g.name)) {
          throw std::logic_error("circuit " + name + ": sends undeclared bit " +
                                 g.name);
        }
        sent.insert(g.name);
      }
      if (g.condition && !declared.count(g.condition->bit)) {
        throw std::logic_error("circuit " + name +
                               ": condition on undeclared bit " +
                               g.condition->bit);
      }
      if (g.kind == GateKind::kEntangle &&
          (g.retry_to < 0 || g.retry_to > static_cast<int>(i))) {
        throw std::logic_error("circuit " + name + ": bad retry target");
      }
      if (g.duration < 0.0 ||
          (g.IsPhysical() && !(g.duration > 0.0))) {
        throw std::logic_error("circuit " + name +
                               ": physical gate without positive duration");
      }
    }
  }
}

std::string KindName(GateKind k) {
  switch (k) {
    case GateKind::kMwRotation: return "mw";
    case GateKind::kRfRotation: return "rf";
    case GateKind::kCondRotation: return "cond";
    case GateKind::kPhaseFrame: return "frame";
    case GateKind::kPauli: return "pauli";
    case GateKind::kReset: return "reset";
    case GateKind::kMeasure: return "measure";
    case GateKind::kWait: return "wait";
    case GateKind::kBarrier: return "barrier";
    case GateKind::kEntangle: return "entangle";
    case GateKind::kRephase: return "rephase";
    case GateKind::kSend: return "send";
  }
  return "?";
}

std::string QubitName(int q) {
  switch (q) {
    case kAliceData: return "Ad";
    case kAliceComm: return "Ac";
    case kBobComm: return "Bc";
    case kBobData: return "Bd";
  }
  return "-";
}

namespace {

double Deg(double rad) {
  const double d = rad * 180.0 / std::numbers::pi;
  return std::abs(d) < 5e-10 ? 0.0 : d;
}

void DumpProgram(std::ostream& os, const NodeProgram& p,
                 const std::vector<double>* times) {
  for (size_t i = 0; i < p.gates.size(); ++i) {
    const NativeGate& g = p.gates[i];
    std::ostringstream line;
    line << std::fixed << std::setprecision(3);
    line << NodeName(p.node) << ' ' << std::setw(3) << i;
    if (times) line << " t=" << std::setw(10) << (*times)[i] * 1e6 << "us";
    line << ' ' << KindName(g.kind);
    switch (g.kind) {
      case GateKind::kMwRotation:
      case GateKind::kRfRotation:
        line << ' ' << QubitName(g.target) << " axis=" << Deg(g.axis)
             << " angle=" << Deg(g.angle);
        break;
      case GateKind::kCondRotation:
        line << ' ' << QubitName(g.control) << "->" << QubitName(g.target)
             << " axis=" << Deg(g.axis);
        break;
      case GateKind::kPhaseFrame:
        line << ' ' << QubitName(g.target) << " angle=" << Deg(g.angle);
        break;
      case GateKind::kPauli:
        line << ' ' << QubitName(g.target) << ' ' << g.pauli;
        break;
      case GateKind::kReset:
      case GateKind::kRephase:
        line << ' ' << QubitName(g.target);
        break;
      case GateKind::kMeasure:
        line << ' ' << QubitName(g.target) << " -> " << g.name
             << (g.destructive ? " destructive" : " nondestructive");
        break;
      case GateKind::kBarrier:
      case GateKind::kSend:
        line << ' ' << g.name;
        break;
      case GateKind::kEntangle:
        line << ' ' << g.name << " retry=" << g.retry_to;
        break;
      case GateKind::kWait:
        break;
    }
    if (g.duration > 0.0) line << " dur=" << g.duration * 1e6 << "us";
    if (g.condition) {
      line << " if " << g.condition->bit << "==" << g.condition->value;
    }
    switch (g.tag) {
      case GateTag::kInitDone: line << " [init]"; break;
      case GateTag::kLocalEntangle: line << " [local]"; break;
      case GateTag::kReadoutMap: line << " [map]"; break;
      case GateTag::kNone: break;
    }
    os << line.str() << '\n';
  }
}

}  // namespace

void DumpCircuit(std::ostream& os, const CompiledCircuit& c,
                 const std::vector<double>* alice_times,
                 const std::vector<double>* bob_times) {
  os << "circuit " << c.name << '\n';
  DumpProgram(os, c.alice, alice_times);
  DumpProgram(os, c.bob, bob_times);
}

NativeGate Mw(int q, double axis, double angle, double duration) {
  NativeGate g;
  g.kind = GateKind::kMwRotation;
  g.target = q;
  g.axis = axis;
  g.angle = angle;
  g.duration = duration;
  return g;
}

NativeGate Rf(int q, double axis, double angle, double duration) {
  NativeGate g = Mw(q, axis, angle, duration);
  g.kind = GateKind::kRfRotation;
  return g;
}

NativeGate Cond(int comm, int data, double axis, double duration,
                GateTag tag) {
  NativeGate g;
  g.kind = GateKind::kCondRotation;
  g.control = comm;
  g.target = data;
  g.axis = axis;
  g.angle = std::numbers::pi / 2;
  g.duration = duration;
  g.tag = tag;
  return g;
}

NativeGate Frame(int q, double angle) {
  NativeGate g;
  g.kind = GateKind::kPhaseFrame;
  g.target = q;
  g.angle = angle;
  return g;
}

NativeGate PauliGate(int q, char p) {
  NativeGate g;
  g.kind = GateKind::kPauli;
  g.target = q;
  g.pauli = p;
  return g;
}

NativeGate Reset(int q, double duration) {
  NativeGate g;
  g.kind = GateKind::kReset;
  g.target = q;
  g.duration = duration;
  return g;
}

NativeGate Measure(int q, const std::string& bit, bool destructive,
                   double duration) {
  NativeGate g;
  g.kind = GateKind::kMeasure;
  g.target = q;
  g.name = bit;
  g.destructive = destructive;
  g.duration = duration;
  return g;
}

NativeGate Barrier(const std::string& name) {
  NativeGate g;
  g.kind = GateKind::kBarrier;
  g.name = name;
  return g;
}

NativeGate Entangle(const std::string& name, int retry_to) {
  NativeGate g;
  g.kind = GateKind::kEntangle;
  g.name = name;
  g.retry_to = retry_to;
  return g;
}

NativeGate Rephase(int data) {
  NativeGate g;
  g.kind = GateKind::kRephase;
  g.target = data;
  return g;
}

NativeGate Send(const std::string& bit) {
  NativeGate g;
  g.kind = GateKind::kSend;
  g.name = bit;
  return g;
}

NativeGate Wait(double duration) {
  NativeGate g;
  g.kind = GateKind::kWait;
  g.duration = duration;
  return g;
}

NativeGate When(NativeGate g, const std::string& bit, int value) {
  g.condition = Condition{bit, value};
  return g;
}

}  // namespace qgt
