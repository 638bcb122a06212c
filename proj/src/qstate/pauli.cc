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

#include "qgt/qstate/pauli.h"

#include <cmath>
#include <numbers>

namespace qgt {

namespace gates {

using M2 = Eigen::Matrix2cd;
constexpr cd kI(0.0, 1.0);

M2 I() { return M2::Identity(); }
M2 X() { M2 m; m << 0, 1, 1, 0; return m; }
M2 Y() { M2 m; m << 0, -kI, kI, 0; return m; }
M2 Z() { M2 m; m << 1, 0, 0, -1; return m; }
M2 H() { M2 m; m << 1, 1, 1, -1; return m / std::sqrt(2.0); }
M2 S() { M2 m; m << 1, 0, 0, kI; return m; }

M2 Rxy(double phi, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  M2 m;
  m << c, -kI * s * std::exp(-kI * phi), -kI * s * std::exp(kI * phi), c;
  return m;
}

M2 Rx(double angle) { return Rxy(0.0, angle); }
M2 Ry(double angle) { return Rxy(std::numbers::pi / 2, angle); }

M2 Rz(double angle) {
  M2 m;
  m << std::exp(-kI * angle / 2.0), 0, 0, std::exp(kI * angle / 2.0);
  return m;
}

M2 Pauli(char label) {
  switch (label) {
    case 'I': return I();
    case 'X': return X();
    case 'Y': return Y();
    case 'Z': return Z();
  }
  throw StateError(std::string("bad Pauli label '") + label + "'");
}

Eigen::Matrix4cd Cnot() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

Eigen::Matrix4cd ConditionalRotation(double phi) {
  const double h = std::numbers::pi / 2;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.block<2, 2>(0, 0) = Rxy(phi, h);
  m.block<2, 2>(2, 2) = Rxy(phi, -h);
  return m;
}

}  // namespace gates

PauliString::PauliString(std::string_view labels) : labels_(labels) {
  if (labels_.empty()) throw StateError("empty Pauli string");
  for (char c : labels_) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw StateError("Pauli string '" + labels_ + "' has invalid label");
    }
  }
}

int PauliString::Weight() const {
  int w = 0;
  for (char c : labels_) w += c != 'I';
  return w;
}

bool PauliString::IsDiagonal() const {
  for (char c : labels_) {
    if (c == 'X' || c == 'Y') return false;
  }
  return true;
}

unsigned PauliString::FlipMask() const {
  const int n = size();
  unsigned m = 0;
  for (int q = 0; q < n; ++q) {
    if (labels_[q] == 'X' || labels_[q] == 'Y') m |= 1u << BitPos(n, q);
  }
  return m;
}

Mat PauliString::ToMatrix() const {
  Mat m = Mat::Ones(1, 1);
  for (char c : labels_) {
    const Eigen::Matrix2cd p = gates::Pauli(c);
    Mat next(m.rows() * 2, m.cols() * 2);
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        next.block(2 * i, 2 * j, 2, 2) = m(i, j) * p;
      }
    }
    m = std::move(next);
  }
  return m;
}

double Expectation(const DensityMatrix& state, const PauliString& op) {
  const int n = state.num_qubits();
  if (op.size() != n) {
    throw StateError("Pauli string length " + std::to_string(op.size()) +
                     " does not match register size " + std::to_string(n));
  }
  // P|k> = c(k) |k ^ flip>, so Tr(rho P) = sum_k c(k) rho(k, k ^ flip).
  const unsigned flip = op.FlipMask();
  cd acc = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    cd c = 1.0;
    for (int q = 0; q < n; ++q) {
      const int bit = (k >> BitPos(n, q)) & 1;
      switch (op[q]) {
        case 'Z': if (bit) c = -c; break;
        case 'Y': c *= bit ? cd(0, -1) : cd(0, 1); break;
        default: break;
      }
    }
    acc += c * state(k, static_cast<int>(k ^ flip));
  }
  return acc.real();
}

}  // namespace qgt
