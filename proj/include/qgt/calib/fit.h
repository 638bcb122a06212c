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

#ifndef QGT_CALIB_FIT_H_
#define QGT_CALIB_FIT_H_

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qgt {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> param_errors;
  Eigen::MatrixXd covariance;
  double residual_norm = 0.0;
  int iterations = 0;
  std::vector<std::string> warnings;

  double Get(const std::string& name) const;
  double Error(const std::string& name) const;
  void Set(const std::string& name, double value);
};

using Points = std::vector<std::pair<double, double>>;

struct LmOptions {
  int max_iterations = 500;
  double rtol = 1e-10;
};

// Model value and gradient with respect to the parameters at x.
using ModelFn = std::function<double(double x, const Eigen::VectorXd& p,
                                     Eigen::VectorXd* grad)>;

// Damped Gauss-Newton (Levenberg-Marquardt). Without sigmas the covariance is
// scaled by the reduced chi-square.
FitResult LevenbergMarquardt(const Points& points, const ModelFn& model,
                             const Eigen::VectorXd& p0,
                             const std::vector<std::string>& names,
                             const std::vector<double>& sigmas = {},
                             const LmOptions& opts = {});

// A exp(-(n / N_1e)^d) + 0.5. Parameters: A, N_1e, d.
FitResult FitDecay(const Points& points, const std::vector<double>& sigmas = {},
                   const LmOptions& opts = {});

enum class RamseyModel { kSingleFreq, kMultiFreq };

// Single: a exp(-k t^2) cos(w t + phase) + c with T2 = 1/sqrt(k).
// Multi: two cosines sharing the envelope and offset.
// Parameters (single): amplitude, omega, phase, k, offset; derived T2.
// Parameters (multi): amplitude1, omega1, phase1, amplitude2, omega2, phase2,
// k, offset.
FitResult FitRamsey(const Points& points, RamseyModel model,
                    const LmOptions& opts = {});

// slope * x + intercept by linear least squares.
FitResult FitLine(const Points& points);

}  // namespace qgt

#endif  // QGT_CALIB_FIT_H_
