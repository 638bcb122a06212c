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

#ifndef QGT_CIRCUITS_LIBRARY_H_
#define QGT_CIRCUITS_LIBRARY_H_

#include <string>
#include <vector>

#include "qgt/circuits/native_gate.h"
#include "qgt/qstate/density_matrix.h"

namespace qgt {

enum class InitState { kPlusZ, kMinusZ, kPlusX, kMinusX, kPlusY, kMinusY };

InitState ParseInitState(const std::string& s);  // "+Z", "-X", ...
std::string InitStateName(InitState s);
Vec InitStateVector(InitState s);
inline constexpr InitState kAllInitStates[6] = {
    InitState::kPlusZ, InitState::kMinusZ, InitState::kPlusX,
    InitState::kMinusX, InitState::kPlusY, InitState::kMinusY};

// Message and measurement bit names.
inline constexpr char kHerald[] = "herald";
inline constexpr char kHeraldMinus[] = "herald_minus";
inline constexpr char kMidA[] = "mA";
inline constexpr char kMidB[] = "mB";
inline constexpr char kDataA[] = "dA";
inline constexpr char kDataB[] = "dB";
inline constexpr char kCommA[] = "cA";
inline constexpr char kCommB[] = "cB";

// Swap-based reset of the data qubit into |0> followed by the rotation to
// the target state. The last gate carries GateTag::kInitDone.
std::vector<NativeGate> InitDataGates(InitState target, const NodeParams& node);
CompiledCircuit InitDataQubit(InitState target, const NodeParams& node);

// Data-qubit readout through the communication qubit, which must be in |0>.
// Reported bit 0 means eigenvalue +1 of the basis Pauli.
std::vector<NativeGate> AssistedReadoutGates(char basis, const NodeParams& node,
                                             const std::string& bit);
CompiledCircuit AssistedReadout(char basis, const NodeParams& node);

// Basis pulse, nondestructive readout and flip back to |0> on reported 1.
std::vector<NativeGate> MidCircuitGates(char basis, const NodeParams& node,
                                        const std::string& bit);

// setting: four bases in register order (Ad, Ac, Bc, Bd), e.g. "ZZZZ" or
// "XYYX"; empty for no tomography.
CompiledCircuit CompileGhz(const NodeParams& alice, const NodeParams& bob,
                           const std::string& setting);

// Teleported CNOT from Alice's data qubit (control) to Bob's. data_bases:
// two bases for (Ad, Bd) or empty.
CompiledCircuit CompileTeleportedCnot(const NodeParams& alice,
                                      const NodeParams& bob, InitState in_a,
                                      InitState in_b,
                                      const std::string& data_bases);

// Heralded state of the two communication qubits, destructively read out in
// comm_bases (two characters).
CompiledCircuit CompileEntangledStateOnly(const NodeParams& alice,
                                          const NodeParams& bob,
                                          const std::string& comm_bases);

}  // namespace qgt

#endif  // QGT_CIRCUITS_LIBRARY_H_
