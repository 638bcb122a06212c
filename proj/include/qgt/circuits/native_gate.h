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

#ifndef QGT_CIRCUITS_NATIVE_GATE_H_
#define QGT_CIRCUITS_NATIVE_GATE_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qgt/protocol/node_params.h"

namespace qgt {

enum class GateKind {
  kMwRotation,       // electron rotation Rxy(axis, angle)
  kRfRotation,       // unconditional data rotation Rxy(axis, angle)
  kCondRotation,     // comm-controlled +-pi/2 data rotation about axis
  kPhaseFrame,       // software Rz(angle), zero duration
  kPauli,            // Pauli frame entry (X, Y or Z), zero duration
  kReset,            // communication qubit to |0>
  kMeasure,          // Z readout of the communication qubit
  kWait,
  kBarrier,          // release when both nodes arrive
  kEntangle,         // remote entanglement loop (paired like a barrier)
  kRephase,          // data-qubit phase correction after the loop
  kSend,             // send a named bit to the other node
};

enum class GateTag {
  kNone,
  kInitDone,       // last gate of a data-qubit initialization
  kLocalEntangle,  // conditional gate between the comm and data qubit
  kReadoutMap,     // conditional gate of the assisted readout
};

struct Condition {
  std::string bit;
  int value = 1;
};

struct NativeGate {
  GateKind kind = GateKind::kWait;
  int target = -1;
  int control = -1;
  double axis = 0.0;
  double angle = 0.0;
  double duration = 0.0;
  char pauli = 'I';
  std::string name;  // measured bit, barrier, message or loop name
  bool destructive = false;
  int retry_to = -1;  // kEntangle: program index to restart on timeout
  std::optional<Condition> condition;
  GateTag tag = GateTag::kNone;

  bool IsPhysical() const;
};

struct NodeProgram {
  NodeId node = NodeId::kAlice;
  std::vector<NativeGate> gates;
};

struct CompiledCircuit {
  std::string name;
  NodeProgram alice{NodeId::kAlice, {}};
  NodeProgram bob{NodeId::kBob, {}};

  NodeProgram& Program(NodeId id) { return id == NodeId::kAlice ? alice : bob; }
  const NodeProgram& Program(NodeId id) const {
    return id == NodeId::kAlice ? alice : bob;
  }
  // Bits produced by measurements, heralds and messages.
  std::vector<std::string> DeclaredBits() const;
  // Throws std::logic_error on misaligned barriers or undeclared conditions.
  void Validate() const;
};

std::string KindName(GateKind k);
std::string QubitName(int q);

// One line per gate: node, index, optional start time, kind, operands,
// duration and condition. Times are taken from start_times when given.
void DumpCircuit(std::ostream& os, const CompiledCircuit& c,
                 const std::vector<double>* alice_times = nullptr,
                 const std::vector<double>* bob_times = nullptr);

// Builders.
NativeGate Mw(int q, double axis, double angle, double duration);
NativeGate Rf(int q, double axis, double angle, double duration);
NativeGate Cond(int comm, int data, double axis, double duration,
                GateTag tag = GateTag::kNone);
NativeGate Frame(int q, double angle);
NativeGate PauliGate(int q, char p);
NativeGate Reset(int q, double duration);
NativeGate Measure(int q, const std::string& bit, bool destructive,
                   double duration);
NativeGate Barrier(const std::string& name);
NativeGate Entangle(const std::string& name, int retry_to);
NativeGate Rephase(int data);
NativeGate Send(const std::string& bit);
NativeGate Wait(double duration);
NativeGate When(NativeGate g, const std::string& bit, int value = 1);

}  // namespace qgt

#endif  // QGT_CIRCUITS_NATIVE_GATE_H_
