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

#ifndef QGT_QSTATE_DENSITY_MATRIX_H_
#define QGT_QSTATE_DENSITY_MATRIX_H_

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qgt {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Register layout. Qubit 0 is the most significant bit of a basis index, so
// |q0 q1 ... q_{n-1}> has index sum_k q_k 2^(n-1-k). The two-node register
// always uses the order below; every module relies on this one definition.
enum RegisterQubit : int {
  kAliceData = 0,
  kAliceComm = 1,
  kBobComm = 2,
  kBobData = 3,
};
inline constexpr int kRegisterQubits = 4;
inline constexpr int kMaxQubits = 5;

inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DensityMatrix {
 public:
  // |0...0><0...0| on num_qubits qubits.
  explicit DensityMatrix(int num_qubits);
  DensityMatrix(int num_qubits, Mat elements);

  static DensityMatrix FromPure(const Vec& psi);
  static DensityMatrix MaximallyMixed(int num_qubits);
  static DensityMatrix Basis(std::span<const int> bits);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  const Mat& matrix() const { return rho_; }
  Mat& mutable_matrix() { return rho_; }
  cd operator()(int r, int c) const { return rho_(r, c); }

  double Trace() const;
  double HermiticityError() const;
  double MinEigenvalue() const;
  // Throws StateError when any invariant is violated.
  void Validate() const;

 private:
  int num_qubits_;
  Mat rho_;
};

DensityMatrix Tensor(const DensityMatrix& a, const DensityMatrix& b);

// Bit position of qubit q inside a basis index of an n-qubit register.
inline int BitPos(int n, int q) { return n - 1 - q; }

void CheckTargets(int num_qubits, std::span<const int> targets);
bool IsUnitary(const Mat& u, double tol = kAlgebraTol);

// rho -> U rho U^dagger on the listed targets. targets[0] is the most
// significant qubit of u.
DensityMatrix ApplyUnitary(const DensityMatrix& state, const Mat& u,
                           std::span<const int> targets);
void ApplyUnitaryInPlace(DensityMatrix& state, const Mat& u,
                         std::span<const int> targets);
// Same as above without the unitarity check; for hot loops.
void ApplyUnitaryUnchecked(DensityMatrix& state, const Mat& u,
                           std::span<const int> targets);

// Convenience for single-qubit gates.
void Apply1(DensityMatrix& state, const Eigen::Matrix2cd& u, int target);

double Fidelity(const DensityMatrix& state, const Vec& target_pure);

DensityMatrix PartialTrace(const DensityMatrix& state,
                           std::span<const int> keep);

}  // namespace qgt

#endif  // QGT_QSTATE_DENSITY_MATRIX_H_
