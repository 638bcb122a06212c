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

#ifndef QGT_CALIB_CORRELATORS_H_
#define QGT_CALIB_CORRELATORS_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qgt/physics/readout.h"
#include "qgt/qstate/pauli.h"

namespace qgt {

// One tomography shot: measured basis per qubit ('X', 'Y', 'Z' or '-') and
// the reported and physical outcome bits.
struct TomographyShot {
  std::string bases;
  std::vector<int> reported;
  std::vector<int> physical;
};

enum class CorrectionMode {
  kNone,       // raw reported eigenvalue
  kInversion,  // confusion-matrix inversion of the reported bit
  kPhysical,   // physical outcome (simulation-only ideal correction)
};

struct QubitCorrection {
  CorrectionMode mode = CorrectionMode::kNone;
  ReadoutModel confusion;
  double contrast = 1.0;  // eigenvalues are divided by this (C_en)
};

struct CorrelatorEstimate {
  PauliString op;
  double value = 0.0;
  double stderr_ = 0.0;
  long n_shots = 0;
  bool clamped = false;  // raw estimate fell outside [-1, 1]
  // Covariance with operators estimated from the same shot set.
  std::vector<std::pair<std::string, double>> covariance_partners;

  double Covariance(const std::string& other) const;
};

// Per-shot corrected eigenvalue product of op, or nothing if the shot's
// bases do not cover op.
bool ShotValue(const TomographyShot& shot, const PauliString& op,
               const std::vector<QubitCorrection>& corr, double* value);

// Throws std::invalid_argument for an operator with no matching shot.
std::vector<CorrelatorEstimate> EstimateCorrelators(
    const std::vector<TomographyShot>& shots,
    const std::vector<PauliString>& operators,
    const std::vector<QubitCorrection>& corrections);

// Mean and standard error of per-trial values for one operator.
CorrelatorEstimate EstimateFromValues(const PauliString& op,
                                      const std::vector<double>& values);

// Fills covariance_partners between the given estimates from per-trial value
// columns of equal length (shared shot set).
void AttachCovariances(std::vector<CorrelatorEstimate*> family,
                       const std::vector<std::vector<double>>& columns);

// Ideal four-qubit target (|0110> - |1001>)/sqrt2 in register order.
Vec GhzTarget();
// The 16 Pauli strings with |<P>| = 1 on the target, identity first, and
// their ideal signs.
std::vector<std::pair<PauliString, int>> GhzStabilizers();

enum class CovarianceSum {
  kPairs,        // 2 sum_{i<j}
  kDoubleCount,  // 2 sum_{i != j}, read literally
};

struct FidelityEstimate {
  double fidelity = 0.0;
  double sigma = 0.0;
  bool sign_mismatch = false;
  std::vector<std::string> mismatched;
};

// F = sum_i |C_i| / 16. Missing identity is added with value 1.
FidelityEstimate GhzFidelity(const std::vector<CorrelatorEstimate>& c,
                             CovarianceSum conv = CovarianceSum::kPairs);

enum class BellTarget { kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus };

FidelityEstimate BellFidelity(const CorrelatorEstimate& xx,
                              const CorrelatorEstimate& yy,
                              const CorrelatorEstimate& zz, BellTarget target);

// Header: operator,value,stderr,n_shots
void WriteCorrelatorTable(std::ostream& os,
                          const std::vector<CorrelatorEstimate>& c);

}  // namespace qgt

#endif  // QGT_CALIB_CORRELATORS_H_
