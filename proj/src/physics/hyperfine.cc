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

#include "qgt/physics/hyperfine.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qgt {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

// exp(-i theta/2 n.sigma) for unit n.
Eigen::Matrix2cd Rotation(const Eigen::Vector3d& n, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd m;
  m << cd(c, -s * n.z()), cd(-s * n.y(), -s * n.x()),
      cd(s * n.y(), -s * n.x()), cd(c, s * n.z());
  return m;
}

}  // namespace

void HyperfineParams::Validate() const {
  if (!(omega_L > 0.0)) throw std::invalid_argument("omega_L must be > 0");
  if (A_perp < 0.0) throw std::invalid_argument("A_perp must be >= 0");
}

PrecessionFrequencies ConditionalPrecessionFrequencies(
    const HyperfineParams& h) {
  h.Validate();
  return {h.omega_L, std::hypot(h.omega_L + h.A_par, h.A_perp)};
}

Eigen::Matrix2cd BranchPropagator(const HyperfineParams& h, int electron,
                                  double t) {
  Eigen::Vector3d field(0.0, 0.0, h.omega_L);
  if (electron) field = Eigen::Vector3d(h.A_perp, 0.0, h.omega_L + h.A_par);
  const double w = field.norm();
  if (w == 0.0) return Eigen::Matrix2cd::Identity();
  return Rotation(field / w, w * t);
}

Eigen::Matrix4cd DdSequenceUnitary(const HyperfineParams& h, double tau,
                                   int n_pulses) {
  h.Validate();
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (n_pulses < 0 || n_pulses % 8 != 0) {
    throw std::invalid_argument("n_pulses must be a multiple of 8");
  }
  const Eigen::Matrix2cd u0_half = BranchPropagator(h, 0, tau);
  const Eigen::Matrix2cd u1_half = BranchPropagator(h, 1, tau);
  const Eigen::Matrix2cd u0_full = u0_half * u0_half;
  const Eigen::Matrix2cd u1_full = u1_half * u1_half;
  auto free = [&](bool full) {
    Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
    f.block<2, 2>(0, 0) = full ? u0_full : u0_half;
    f.block<2, 2>(2, 2) = full ? u1_full : u1_half;
    return f;
  };
  if (n_pulses == 0) return free(true);

  // XY8 axis order X Y X Y Y X Y X.
  static constexpr bool kIsY[8] = {false, true, false, true,
                                   true, false, true, false};
  Eigen::Matrix4cd u = free(false);
  const Eigen::Matrix4cd f_full = free(true);
  for (int k = 0; k < n_pulses; ++k) {
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    // pi pulse on the electron: -i X or -i Y, identity on the nucleus.
    const cd a = kIsY[k % 8] ? cd(-1.0, 0.0) : -kI;  // <0|P|1>
    const cd b = kIsY[k % 8] ? cd(1.0, 0.0) : -kI;   // <1|P|0>
    p.block<2, 2>(0, 2) = a * Eigen::Matrix2cd::Identity();
    p.block<2, 2>(2, 0) = b * Eigen::Matrix2cd::Identity();
    u = p * u;
    u = (k + 1 < n_pulses ? f_full : free(false)) * u;
  }
  return u;
}

AxisAngle ToAxisAngle(const Eigen::Matrix2cd& u) {
  const cd det = u.determinant();
  Eigen::Matrix2cd v = u / std::sqrt(det);
  // v = cos(t/2) I - i sin(t/2) n.sigma; fix sign so cos(t/2) >= 0.
  if (v.trace().real() < 0.0) v = -v;
  const double c = std::clamp(v.trace().real() / 2.0, -1.0, 1.0);
  AxisAngle out;
  out.angle = 2.0 * std::acos(c);
  const double s = std::sin(out.angle / 2.0);
  if (s < 1e-15) return out;
  // v = c I - i s n.sigma.
  Eigen::Vector3d n;
  n.x() = -(v(0, 1) + v(1, 0)).imag() / (2.0 * s);
  n.y() = (v(1, 0) - v(0, 1)).real() / (2.0 * s);
  n.z() = -(v(0, 0) - v(1, 1)).imag() / (2.0 * s);
  out.axis = n.normalized();
  return out;
}

ConditionalGateCheck AnalyzeConditionalGate(const Eigen::Matrix4cd& u) {
  ConditionalGateCheck out;
  const Eigen::Matrix2cd v0 = u.block<2, 2>(0, 0);
  const Eigen::Matrix2cd v1 = u.block<2, 2>(2, 2);
  out.branch0 = ToAxisAngle(v0);
  out.branch1 = ToAxisAngle(v1);
  out.axis_dot = out.branch0.axis.dot(out.branch1.axis);
  const double h = std::acos(0.0);
  const Eigen::Matrix2cd i0 = Rotation(out.branch0.axis, h);
  const Eigen::Matrix2cd i1 = Rotation(out.branch0.axis, -h);
  out.overlap = (std::abs((i0.adjoint() * v0).trace()) +
                 std::abs((i1.adjoint() * v1).trace())) /
                4.0;
  return out;
}

double ElectronCoherence(const Eigen::Matrix4cd& u) {
  const Eigen::Matrix2cd v0 = u.block<2, 2>(0, 0);
  const Eigen::Matrix2cd v1 = u.block<2, 2>(2, 2);
  return std::abs((v0.adjoint() * v1).trace()) / 2.0;
}

}  // namespace qgt
