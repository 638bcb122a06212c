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

#include "qgt/qstate/kraus.h"

#include <cmath>
#include <sstream>

#include "qgt/qstate/pauli.h"

namespace qgt {

KrausChannel::KrausChannel(std::vector<Mat> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw StateError("Kraus channel has no operators");
  const auto d = ops_[0].rows();
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw StateError("Kraus operator dimension is not 2^n");
  for (const Mat& k : ops_) {
    if (k.rows() != d || k.cols() != d) {
      throw StateError("Kraus operators have unequal dimensions");
    }
  }
  num_qubits_ = n;
  if (TracePreservationError() > kAlgebraTol) {
    std::ostringstream msg;
    msg << "channel is not trace preserving (error "
        << TracePreservationError() << ")";
    throw StateError(msg.str());
  }
}

KrausChannel KrausChannel::Identity(int num_qubits) {
  const int d = 1 << num_qubits;
  return KrausChannel({Mat::Identity(d, d)});
}

double KrausChannel::TracePreservationError() const {
  const auto d = ops_[0].rows();
  Mat sum = Mat::Zero(d, d);
  for (const Mat& k : ops_) sum += k.adjoint() * k;
  return (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
}

KrausChannel DephasingChannel(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw StateError("dephasing probability outside [0, 1]");
  }
  Mat k0 = std::sqrt(1.0 - lambda) * Mat(gates::I());
  Mat k1 = std::sqrt(lambda) * Mat(gates::Z());
  return KrausChannel({k0, k1});
}

void ApplyChannelInPlace(DensityMatrix& state, const KrausChannel& ch,
                         std::span<const int> targets) {
  CheckTargets(state.num_qubits(), targets);
  if (ch.num_qubits() != static_cast<int>(targets.size())) {
    throw StateError("channel dimension does not match target count");
  }
  Mat acc = Mat::Zero(state.dim(), state.dim());
  for (const Mat& k : ch.ops()) {
    DensityMatrix term = state;
    ApplyUnitaryUnchecked(term, k, targets);
    acc += term.matrix();
  }
  state.mutable_matrix() = std::move(acc);
}

DensityMatrix ApplyChannel(const DensityMatrix& state, const KrausChannel& ch,
                           std::span<const int> targets) {
  DensityMatrix out = state;
  ApplyChannelInPlace(out, ch, targets);
  return out;
}

void DephaseInPlace(DensityMatrix& state, int target, double retention) {
  const unsigned bit = 1u << BitPos(state.num_qubits(), target);
  Mat& m = state.mutable_matrix();
  const int d = state.dim();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (((r ^ c) & bit) != 0) m(r, c) *= retention;
    }
  }
}

void DepolarizeInPlace(DensityMatrix& state, int target, double p_dep) {
  if (p_dep == 0.0) return;
  const unsigned bit = 1u << BitPos(state.num_qubits(), target);
  const Mat& m = state.matrix();
  const int d = state.dim();
  Mat out = (1.0 - p_dep) * m;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (((r ^ c) & bit) != 0) continue;
      const int r0 = r & ~bit, c0 = c & ~bit;
      out(r, c) += p_dep * 0.5 * (m(r0, c0) + m(r0 | bit, c0 | bit));
    }
  }
  state.mutable_matrix() = std::move(out);
}

double ProbabilityOfOne(const DensityMatrix& state, int target) {
  const unsigned bit = 1u << BitPos(state.num_qubits(), target);
  double p = 0.0;
  for (int k = 0; k < state.dim(); ++k) {
    if (k & bit) p += state(k, k).real();
  }
  return p;
}

double ProjectInPlace(DensityMatrix& state, int target, int outcome) {
  const unsigned bit = 1u << BitPos(state.num_qubits(), target);
  const double p1 = ProbabilityOfOne(state, target);
  const double p = outcome ? p1 : state.Trace() - p1;
  if (p <= 0.0) return 0.0;
  Mat& m = state.mutable_matrix();
  const int d = state.dim();
  const unsigned want = outcome ? bit : 0u;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if ((r & bit) != want || (c & bit) != want) {
        m(r, c) = 0.0;
      } else {
        m(r, c) /= p;
      }
    }
  }
  return p;
}

MeasureResult MeasureQubit(const DensityMatrix& state, int target,
                           RandomStream& rng) {
  CheckTargets(state.num_qubits(), std::span<const int>(&target, 1));
  const double p1 = ProbabilityOfOne(state, target);
  const double p0 = state.Trace() - p1;
  if (p0 < 1e-12 && p1 < 1e-12) {
    throw StateError("measurement probabilities underflow; state corrupted");
  }
  MeasureResult res;
  res.outcome = rng.Uniform() < p1 / (p0 + p1) ? 1 : 0;
  res.post_state = state;
  res.probability = ProjectInPlace(res.post_state, target, res.outcome);
  return res;
}

}  // namespace qgt
