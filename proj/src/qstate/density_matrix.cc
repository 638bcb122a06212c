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

#include "qgt/qstate/density_matrix.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qgt {

namespace {

void CheckQubitCount(int n) {
  if (n < 1 || n > kMaxQubits) {
    std::ostringstream msg;
    msg << "register size " << n << " outside [1, " << kMaxQubits << "]";
    throw StateError(msg.str());
  }
}

// Indices of the 2^k subspace for one assignment of the non-target bits.
struct SubspaceIndexer {
  int n;
  std::vector<int> target_bits;
  unsigned target_mask = 0;

  SubspaceIndexer(int n_, std::span<const int> targets) : n(n_) {
    for (int t : targets) {
      target_bits.push_back(BitPos(n, t));
      target_mask |= 1u << BitPos(n, t);
    }
  }

  int local_dim() const { return 1 << target_bits.size(); }

  // Global index for base (target bits clear) and local index j, where the
  // first target is the most significant bit of j.
  int Index(unsigned base, int j) const {
    const int k = static_cast<int>(target_bits.size());
    unsigned idx = base;
    for (int b = 0; b < k; ++b) {
      if (j & (1 << (k - 1 - b))) idx |= 1u << target_bits[b];
    }
    return static_cast<int>(idx);
  }
};

// M -> U M on the row index (left) and M -> M U^dagger on the column index.
void MultiplyLeft(Mat& m, const Mat& u, const SubspaceIndexer& ix) {
  const int dim = static_cast<int>(m.rows());
  const int ld = ix.local_dim();
  std::array<int, 32> idx{};
  std::array<cd, 32> buf{};
  for (unsigned base = 0; base < static_cast<unsigned>(dim); ++base) {
    if (base & ix.target_mask) continue;
    for (int j = 0; j < ld; ++j) idx[j] = ix.Index(base, j);
    for (int c = 0; c < dim; ++c) {
      for (int j = 0; j < ld; ++j) buf[j] = m(idx[j], c);
      for (int i = 0; i < ld; ++i) {
        cd acc = 0.0;
        for (int j = 0; j < ld; ++j) acc += u(i, j) * buf[j];
        m(idx[i], c) = acc;
      }
    }
  }
}

void MultiplyRightDagger(Mat& m, const Mat& u, const SubspaceIndexer& ix) {
  const int dim = static_cast<int>(m.rows());
  const int ld = ix.local_dim();
  std::array<int, 32> idx{};
  std::array<cd, 32> buf{};
  for (unsigned base = 0; base < static_cast<unsigned>(dim); ++base) {
    if (base & ix.target_mask) continue;
    for (int j = 0; j < ld; ++j) idx[j] = ix.Index(base, j);
    for (int r = 0; r < dim; ++r) {
      for (int j = 0; j < ld; ++j) buf[j] = m(r, idx[j]);
      for (int i = 0; i < ld; ++i) {
        cd acc = 0.0;
        for (int j = 0; j < ld; ++j) acc += buf[j] * std::conj(u(i, j));
        m(r, idx[i]) = acc;
      }
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
  CheckQubitCount(num_qubits);
  const int d = 1 << num_qubits;
  rho_ = Mat::Zero(d, d);
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(int num_qubits, Mat elements)
    : num_qubits_(num_qubits), rho_(std::move(elements)) {
  CheckQubitCount(num_qubits);
  const int d = 1 << num_qubits;
  if (rho_.rows() != d || rho_.cols() != d) {
    throw StateError("density matrix dimension does not match qubit count");
  }
}

DensityMatrix DensityMatrix::FromPure(const Vec& psi) {
  const int d = static_cast<int>(psi.size());
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw StateError("state vector length is not 2^n");
  if (std::abs(psi.squaredNorm() - 1.0) > kAlgebraTol) {
    throw StateError("state vector is not normalized");
  }
  return DensityMatrix(n, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::MaximallyMixed(int num_qubits) {
  CheckQubitCount(num_qubits);
  const int d = 1 << num_qubits;
  return DensityMatrix(num_qubits, Mat::Identity(d, d) / double(d));
}

DensityMatrix DensityMatrix::Basis(std::span<const int> bits) {
  const int n = static_cast<int>(bits.size());
  CheckQubitCount(n);
  int idx = 0;
  for (int b : bits) idx = (idx << 1) | (b & 1);
  const int d = 1 << n;
  Mat m = Mat::Zero(d, d);
  m(idx, idx) = 1.0;
  return DensityMatrix(n, std::move(m));
}

double DensityMatrix::Trace() const { return rho_.trace().real(); }

double DensityMatrix::HermiticityError() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::MinEigenvalue() const {
  Mat herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::Validate() const {
  std::ostringstream msg;
  if (HermiticityError() > kAlgebraTol) {
    msg << "not Hermitian: max |rho - rho^dag| = " << HermiticityError();
    throw StateError(msg.str());
  }
  if (std::abs(Trace() - 1.0) > kAlgebraTol) {
    msg << "trace " << Trace() << " != 1";
    throw StateError(msg.str());
  }
  if (MinEigenvalue() < -kPsdTol) {
    msg << "negative eigenvalue " << MinEigenvalue();
    throw StateError(msg.str());
  }
}

DensityMatrix Tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const int da = a.dim(), db = b.dim();
  Mat m(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return DensityMatrix(a.num_qubits() + b.num_qubits(), std::move(m));
}

void CheckTargets(int num_qubits, std::span<const int> targets) {
  if (targets.empty()) throw StateError("empty target list");
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      std::ostringstream msg;
      msg << "target " << targets[i] << " out of range for " << num_qubits
          << " qubits";
      throw StateError(msg.str());
    }
    for (size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw StateError("duplicate target " + std::to_string(targets[i]));
      }
    }
  }
}

bool IsUnitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Mat e = u * u.adjoint() - Mat::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff() <= tol;
}

void ApplyUnitaryUnchecked(DensityMatrix& state, const Mat& u,
                           std::span<const int> targets) {
  SubspaceIndexer ix(state.num_qubits(), targets);
  MultiplyLeft(state.mutable_matrix(), u, ix);
  MultiplyRightDagger(state.mutable_matrix(), u, ix);
}

void ApplyUnitaryInPlace(DensityMatrix& state, const Mat& u,
                         std::span<const int> targets) {
  CheckTargets(state.num_qubits(), targets);
  if (u.rows() != (1 << targets.size())) {
    throw StateError("unitary dimension does not match target count");
  }
  if (!IsUnitary(u)) throw StateError("matrix is not unitary");
  ApplyUnitaryUnchecked(state, u, targets);
}

DensityMatrix ApplyUnitary(const DensityMatrix& state, const Mat& u,
                           std::span<const int> targets) {
  DensityMatrix out = state;
  ApplyUnitaryInPlace(out, u, targets);
  return out;
}

void Apply1(DensityMatrix& state, const Eigen::Matrix2cd& u, int target) {
  // Direct 2x2 update; avoids the generic gather loop.
  const int n = state.num_qubits();
  const int d = state.dim();
  const unsigned bit = 1u << BitPos(n, target);
  Mat& m = state.mutable_matrix();
  for (int c = 0; c < d; ++c) {
    for (unsigned r0 = 0; r0 < static_cast<unsigned>(d); ++r0) {
      if (r0 & bit) continue;
      const unsigned r1 = r0 | bit;
      const cd a = m(r0, c), b = m(r1, c);
      m(r0, c) = u(0, 0) * a + u(0, 1) * b;
      m(r1, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  for (int r = 0; r < d; ++r) {
    for (unsigned c0 = 0; c0 < static_cast<unsigned>(d); ++c0) {
      if (c0 & bit) continue;
      const unsigned c1 = c0 | bit;
      const cd a = m(r, c0), b = m(r, c1);
      m(r, c0) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
      m(r, c1) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
    }
  }
}

double Fidelity(const DensityMatrix& state, const Vec& target_pure) {
  if (target_pure.size() != state.dim()) {
    throw StateError("target dimension does not match state");
  }
  if (std::abs(target_pure.squaredNorm() - 1.0) > kAlgebraTol) {
    throw StateError("target state is not normalized");
  }
  return (target_pure.adjoint() * state.matrix() * target_pure)(0, 0).real();
}

DensityMatrix PartialTrace(const DensityMatrix& state,
                           std::span<const int> keep) {
  if (keep.empty()) throw StateError("partial trace keeps no qubits");
  CheckTargets(state.num_qubits(), keep);
  const int n = state.num_qubits();
  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
      traced.push_back(q);
    }
  }
  const int dk = 1 << k;
  const int dt = 1 << traced.size();
  auto compose = [&](int kept_idx, int traced_idx) {
    unsigned idx = 0;
    for (int b = 0; b < k; ++b) {
      if (kept_idx & (1 << (k - 1 - b))) idx |= 1u << BitPos(n, keep[b]);
    }
    const int nt = static_cast<int>(traced.size());
    for (int b = 0; b < nt; ++b) {
      if (traced_idx & (1 << (nt - 1 - b))) {
        idx |= 1u << BitPos(n, traced[b]);
      }
    }
    return static_cast<int>(idx);
  };
  Mat out = Mat::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      cd acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += state(compose(i, t), compose(j, t));
      out(i, j) = acc;
    }
  }
  return DensityMatrix(k, std::move(out));
}

}  // namespace qgt
