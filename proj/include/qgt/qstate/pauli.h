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

#ifndef QGT_QSTATE_PAULI_H_
#define QGT_QSTATE_PAULI_H_

#include <string>
#include <string_view>

#include "qgt/qstate/density_matrix.h"

namespace qgt {

namespace gates {
Eigen::Matrix2cd I();
Eigen::Matrix2cd X();
Eigen::Matrix2cd Y();
Eigen::Matrix2cd Z();
Eigen::Matrix2cd H();
Eigen::Matrix2cd S();
// exp(-i angle/2 (cos(phi) X + sin(phi) Y))
Eigen::Matrix2cd Rxy(double phi, double angle);
Eigen::Matrix2cd Rx(double angle);
Eigen::Matrix2cd Ry(double angle);
Eigen::Matrix2cd Rz(double angle);
Eigen::Matrix2cd Pauli(char label);
// 4x4 CNOT with the first tensor factor as control.
Eigen::Matrix4cd Cnot();
// |0><0| (x) Rxy(phi, pi/2) + |1><1| (x) Rxy(phi, -pi/2), control first.
Eigen::Matrix4cd ConditionalRotation(double phi);
}  // namespace gates

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string_view labels);

  static PauliString Identity(int n) { return PauliString(std::string(n, 'I')); }

  int size() const { return static_cast<int>(labels_.size()); }
  char operator[](int q) const { return labels_[q]; }
  const std::string& str() const { return labels_; }
  int Weight() const;
  bool IsDiagonal() const;  // only I and Z
  // Bits of qubits that carry X or Y (flip mask) in index space.
  unsigned FlipMask() const;
  Mat ToMatrix() const;

  bool operator==(const PauliString& o) const { return labels_ == o.labels_; }
  bool operator<(const PauliString& o) const { return labels_ < o.labels_; }

 private:
  std::string labels_;
};

// Tr(rho P). Throws StateError on length mismatch.
double Expectation(const DensityMatrix& state, const PauliString& op);

}  // namespace qgt

#endif  // QGT_QSTATE_PAULI_H_
