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

#include "qgt/physics/herald.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgt {

namespace {

void CheckProb(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "herald parameter " << name << " = " << v << " outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

double SignalFidelity(const HeraldModelParams& p) {
  const double coh =
      p.visibility * std::exp(-0.5 * p.phi_jitter_std * p.phi_jitter_std);
  return (1.0 - p.Epsilon()) * (1.0 + coh) / 2.0;
}

double FalseFidelity(const HeraldModelParams& p) {
  const DensityMatrix f = FalseClickState(p);
  return 0.5 * (f(1, 1).real() + f(2, 2).real());
}

}  // namespace

void HeraldModelParams::Validate() const {
  CheckProb(alpha_A, "alpha_A");
  CheckProb(alpha_B, "alpha_B");
  CheckProb(p_A, "p_A");
  CheckProb(p_B, "p_B");
  CheckProb(visibility, "visibility");
  CheckProb(dark_count_prob, "dark_count_prob");
  CheckProb(background_click_prob, "background_click_prob");
  CheckProb(FalseClickProb(), "dark_count_prob + background_click_prob");
  if (!(phi_jitter_std >= 0.0)) {
    throw std::invalid_argument("herald phi_jitter_std must be >= 0");
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("herald phi not finite");
}

double HeraldModelParams::Balance() const {
  return std::abs(p_A * alpha_A - p_B * alpha_B);
}

Vec BellPsi(int sign, double phi) {
  Vec v = Vec::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = double(sign) * std::exp(cd(0.0, phi)) / std::sqrt(2.0);
  return v;
}

HeraldProbabilities ComputeHeraldProbabilities(const HeraldModelParams& p) {
  p.Validate();
  const double qa = p.p_A * p.alpha_A;
  const double qb = p.p_B * p.alpha_B;
  const double d = p.FalseClickProb();
  // Each photon reaches D1 or D2 with probability 1/2.
  const double d2_silent = (1.0 - d) * (1.0 - qa / 2) * (1.0 - qb / 2);
  const double both_silent = (1.0 - d) * (1.0 - d) * (1.0 - qa) * (1.0 - qb);
  HeraldProbabilities out;
  out.per_detector = d2_silent - both_silent;
  out.single_click = 2.0 * out.per_detector;
  const double false_only = (1.0 - qa) * (1.0 - qb) * d * (1.0 - d);
  out.false_fraction =
      out.per_detector > 0.0 ? false_only / out.per_detector : 0.0;
  return out;
}

DensityMatrix SignalHeraldStateAtPhase(const HeraldModelParams& p, Detector d,
                                       double phi) {
  const double eps = p.Epsilon();
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = eps;
  m(1, 1) = m(2, 2) = 0.5 * (1.0 - eps);
  const cd c = 0.5 * (1.0 - eps) * p.visibility * double(DetectorSign(d)) *
               std::exp(cd(0.0, -phi));
  m(1, 2) = c;
  m(2, 1) = std::conj(c);
  return DensityMatrix(2, std::move(m));
}

DensityMatrix SignalHeraldState(const HeraldModelParams& p, Detector d) {
  DensityMatrix s = SignalHeraldStateAtPhase(p, d, p.phi);
  const double damp = std::exp(-0.5 * p.phi_jitter_std * p.phi_jitter_std);
  s.mutable_matrix()(1, 2) *= damp;
  s.mutable_matrix()(2, 1) *= damp;
  return s;
}

DensityMatrix FalseClickState(const HeraldModelParams& p) {
  auto dark0 = [](double alpha, double pdet) {
    const double w0 = alpha * (1.0 - pdet);
    return w0 / (w0 + (1.0 - alpha));
  };
  const double a0 = dark0(p.alpha_A, p.p_A);
  const double b0 = dark0(p.alpha_B, p.p_B);
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = a0 * b0;
  m(1, 1) = a0 * (1.0 - b0);
  m(2, 2) = (1.0 - a0) * b0;
  m(3, 3) = (1.0 - a0) * (1.0 - b0);
  return DensityMatrix(2, std::move(m));
}

DensityMatrix HeraldedState(const HeraldModelParams& p, Detector d) {
  const double w = ComputeHeraldProbabilities(p).false_fraction;
  Mat m = (1.0 - w) * SignalHeraldState(p, d).matrix() +
          w * FalseClickState(p).matrix();
  return DensityMatrix(2, std::move(m));
}

AttemptResult HeraldState(const HeraldModelParams& p, RandomStream& rng) {
  AttemptResult out;
  bool click[2] = {false, false};
  bool photon = false;
  auto emit = [&](double q) {
    if (rng.Uniform() < q) {
      photon = true;
      click[rng.Uniform() < 0.5 ? 0 : 1] = true;
    }
  };
  emit(p.p_A * p.alpha_A);
  emit(p.p_B * p.alpha_B);
  const double f = p.FalseClickProb();
  bool false_click[2] = {rng.Uniform() < f, rng.Uniform() < f};
  click[0] = click[0] || false_click[0];
  click[1] = click[1] || false_click[1];
  if (click[0] == click[1]) return out;  // none or double
  const Detector d = click[0] ? Detector::kD1 : Detector::kD2;
  HeraldEvent ev;
  ev.detector = d;
  ev.sign = DetectorSign(d);
  out.event = ev;
  out.false_click = !photon;
  if (photon) {
    const double phi = p.phi + p.phi_jitter_std * rng.Normal();
    out.state = SignalHeraldStateAtPhase(p, d, phi);
  } else {
    out.state = FalseClickState(p);
  }
  return out;
}

double HeraldedFidelity(const HeraldModelParams& p) {
  const double w = ComputeHeraldProbabilities(p).false_fraction;
  return (1.0 - w) * SignalFidelity(p) + w * FalseFidelity(p);
}

double CalibrateVisibility(HeraldModelParams p, double target_fidelity) {
  const double w = ComputeHeraldProbabilities(p).false_fraction;
  const double damp = std::exp(-0.5 * p.phi_jitter_std * p.phi_jitter_std);
  const double f_sig = (target_fidelity - w * FalseFidelity(p)) / (1.0 - w);
  const double v = (2.0 * f_sig / (1.0 - p.Epsilon()) - 1.0) / damp;
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "no visibility in [0, 1] reaches heralded fidelity "
        << target_fidelity << " (needs " << v << ")";
    throw std::invalid_argument(msg.str());
  }
  return v;
}

HeraldModelParams CalibratedHeraldDefaults() {
  HeraldModelParams p;
  p.background_click_prob = kDefaultBackgroundClick;
  p.visibility = CalibrateVisibility(p, kHeraldedFidelityTarget);
  return p;
}

}  // namespace qgt
