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

#include "qgt/calib/correlators.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <stdexcept>

namespace qgt {

double CorrelatorEstimate::Covariance(const std::string& other) const {
  for (const auto& [name, v] : covariance_partners) {
    if (name == other) return v;
  }
  return 0.0;
}

bool ShotValue(const TomographyShot& shot, const PauliString& op,
               const std::vector<QubitCorrection>& corr, double* value) {
  if (static_cast<int>(shot.bases.size()) != op.size()) {
    throw std::invalid_argument("shot bases do not match operator length");
  }
  double v = 1.0;
  for (int q = 0; q < op.size(); ++q) {
    if (op[q] == 'I') continue;
    if (shot.bases[q] != op[q]) return false;
    const QubitCorrection& c = corr.at(q);
    double e = 0.0;
    switch (c.mode) {
      case CorrectionMode::kNone:
        e = shot.reported.at(q) ? -1.0 : 1.0;
        break;
      case CorrectionMode::kInversion:
        e = UnbiasedEigenvalue(shot.reported.at(q), c.confusion);
        break;
      case CorrectionMode::kPhysical:
        e = shot.physical.at(q) ? -1.0 : 1.0;
        break;
    }
    v *= e / c.contrast;
  }
  *value = v;
  return true;
}

CorrelatorEstimate EstimateFromValues(const PauliString& op,
                                      const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("no shots for operator " + op.str());
  }
  CorrelatorEstimate e;
  e.op = op;
  e.n_shots = static_cast<long>(values.size());
  double s = 0.0, s2 = 0.0;
  for (double v : values) {
    s += v;
    s2 += v * v;
  }
  const double n = double(values.size());
  const double m = s / n;
  e.stderr_ = std::sqrt(std::max(0.0, s2 / n - m * m) / n);
  e.clamped = std::abs(m) > 1.0;
  e.value = std::clamp(m, -1.0, 1.0);
  return e;
}

void AttachCovariances(std::vector<CorrelatorEstimate*> family,
                       const std::vector<std::vector<double>>& columns) {
  if (family.size() != columns.size()) {
    throw std::invalid_argument("covariance family size mismatch");
  }
  std::vector<double> mean(columns.size(), 0.0);
  for (size_t i = 0; i < columns.size(); ++i) {
    for (double v : columns[i]) mean[i] += v;
    mean[i] /= double(columns[i].size());
  }
  for (size_t i = 0; i < columns.size(); ++i) {
    for (size_t j = 0; j < columns.size(); ++j) {
      if (i == j) continue;
      if (columns[i].size() != columns[j].size()) {
        throw std::invalid_argument("covariance columns differ in length");
      }
      const double n = double(columns[i].size());
      double s = 0.0;
      for (size_t k = 0; k < columns[i].size(); ++k) {
        s += columns[i][k] * columns[j][k];
      }
      family[i]->covariance_partners.emplace_back(
          family[j]->op.str(), (s / n - mean[i] * mean[j]) / n);
    }
  }
}

std::vector<CorrelatorEstimate> EstimateCorrelators(
    const std::vector<TomographyShot>& shots,
    const std::vector<PauliString>& operators,
    const std::vector<QubitCorrection>& corrections) {
  std::vector<CorrelatorEstimate> out;
  std::vector<std::vector<double>> values(operators.size());
  std::vector<std::vector<size_t>> index(operators.size());
  for (size_t k = 0; k < operators.size(); ++k) {
    for (size_t s = 0; s < shots.size(); ++s) {
      double v;
      if (ShotValue(shots[s], operators[k], corrections, &v)) {
        values[k].push_back(v);
        index[k].push_back(s);
      }
    }
    out.push_back(EstimateFromValues(operators[k], values[k]));
  }
  // Diagonal strings measured on the same shot set share covariances.
  std::vector<size_t> diag;
  for (size_t k = 0; k < operators.size(); ++k) {
    if (operators[k].IsDiagonal() && operators[k].Weight() > 0) diag.push_back(k);
  }
  std::map<std::vector<size_t>, std::vector<size_t>> groups;
  for (size_t k : diag) groups[index[k]].push_back(k);
  for (const auto& [idx, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<CorrelatorEstimate*> fam;
    std::vector<std::vector<double>> cols;
    for (size_t k : members) {
      fam.push_back(&out[k]);
      cols.push_back(values[k]);
    }
    AttachCovariances(fam, cols);
  }
  return out;
}

Vec GhzTarget() {
  Vec v = Vec::Zero(16);
  v(0b0110) = 1.0 / std::sqrt(2.0);
  v(0b1001) = -1.0 / std::sqrt(2.0);
  return v;
}

std::vector<std::pair<PauliString, int>> GhzStabilizers() {
  static const char kLabels[4] = {'I', 'X', 'Y', 'Z'};
  const DensityMatrix ghz = DensityMatrix::FromPure(GhzTarget());
  std::vector<std::pair<PauliString, int>> out;
  for (int code = 0; code < 256; ++code) {
    std::string s(4, 'I');
    for (int q = 0; q < 4; ++q) s[q] = kLabels[(code >> (2 * (3 - q))) & 3];
    const PauliString p(s);
    const double e = Expectation(ghz, p);
    if (std::abs(std::abs(e) - 1.0) < 1e-9) out.emplace_back(p, e > 0 ? 1 : -1);
  }
  return out;
}

FidelityEstimate GhzFidelity(const std::vector<CorrelatorEstimate>& c,
                             CovarianceSum conv) {
  const auto stab = GhzStabilizers();
  std::map<std::string, const CorrelatorEstimate*> by_name;
  for (const auto& e : c) by_name[e.op.str()] = &e;
  FidelityEstimate out;
  double sum = 0.0, var = 0.0;
  std::vector<std::pair<const CorrelatorEstimate*, double>> zfam;
  for (const auto& [p, sign] : stab) {
    if (p.Weight() == 0) {
      sum += 1.0;
      continue;
    }
    auto it = by_name.find(p.str());
    if (it == by_name.end()) {
      throw std::invalid_argument("missing GHZ correlator " + p.str());
    }
    const CorrelatorEstimate& e = *it->second;
    sum += std::abs(e.value);
    var += e.stderr_ * e.stderr_;
    if (e.value * sign < 0.0) {
      out.sign_mismatch = true;
      out.mismatched.push_back(p.str());
    }
    if (p.IsDiagonal()) zfam.emplace_back(&e, e.value >= 0.0 ? 1.0 : -1.0);
  }
  if (by_name.size() + (by_name.count("IIII") ? 0 : 1) != stab.size()) {
    throw std::invalid_argument("GHZ fidelity needs exactly the 16 correlators");
  }
  const double factor = conv == CovarianceSum::kPairs ? 2.0 : 4.0;
  for (size_t i = 0; i < zfam.size(); ++i) {
    for (size_t j = i + 1; j < zfam.size(); ++j) {
      var += factor * zfam[i].second * zfam[j].second *
             zfam[i].first->Covariance(zfam[j].first->op.str());
    }
  }
  out.fidelity = sum / 16.0;
  out.sigma = std::sqrt(std::max(0.0, var)) / 16.0;
  return out;
}

FidelityEstimate BellFidelity(const CorrelatorEstimate& xx,
                              const CorrelatorEstimate& yy,
                              const CorrelatorEstimate& zz, BellTarget target) {
  double sx = 1, sy = 1, sz = 1;
  switch (target) {
    case BellTarget::kPsiPlus:
      sz = -1;
      break;
    case BellTarget::kPsiMinus:
      sx = sy = sz = -1;
      break;
    case BellTarget::kPhiPlus:
      sy = -1;
      break;
    case BellTarget::kPhiMinus:
      sx = -1;
      break;
  }
  FidelityEstimate out;
  out.fidelity = (1.0 + sx * xx.value + sy * yy.value + sz * zz.value) / 4.0;
  out.sigma = std::sqrt(xx.stderr_ * xx.stderr_ + yy.stderr_ * yy.stderr_ +
                        zz.stderr_ * zz.stderr_) /
              4.0;
  return out;
}

void WriteCorrelatorTable(std::ostream& os,
                          const std::vector<CorrelatorEstimate>& c) {
  os << "operator,value,stderr,n_shots\n";
  os << std::setprecision(10);
  for (const auto& e : c) {
    os << e.op.str() << ',' << e.value << ',' << e.stderr_ << ',' << e.n_shots
       << '\n';
  }
}

}  // namespace qgt
