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

#include "qgt/calib/fit.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>

namespace qgt {

namespace {

int IndexOf(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  throw std::out_of_range("fit has no parameter '" + name + "'");
}

struct Problem {
  const Points* points;
  const ModelFn* model;
  std::vector<double> weights;  // 1 / sigma
};

double Cost(const Problem& pr, const Eigen::VectorXd& p, Eigen::VectorXd* r,
            Eigen::MatrixXd* jac) {
  const auto& pts = *pr.points;
  const int m = static_cast<int>(pts.size());
  const int k = static_cast<int>(p.size());
  if (r) r->resize(m);
  if (jac) jac->resize(m, k);
  Eigen::VectorXd grad(k);
  double cost = 0.0;
  for (int i = 0; i < m; ++i) {
    grad.setZero();
    const double f = (*pr.model)(pts[i].first, p, jac ? &grad : nullptr);
    const double w = pr.weights[i];
    const double ri = (pts[i].second - f) * w;
    if (r) (*r)(i) = ri;
    if (jac) jac->row(i) = grad.transpose() * w;
    cost += ri * ri;
  }
  return cost;
}

}  // namespace

double FitResult::Get(const std::string& name) const {
  return params[IndexOf(names, name)];
}

double FitResult::Error(const std::string& name) const {
  return param_errors[IndexOf(names, name)];
}

void FitResult::Set(const std::string& name, double value) {
  params[IndexOf(names, name)] = value;
}

FitResult LevenbergMarquardt(const Points& points, const ModelFn& model,
                             const Eigen::VectorXd& p0,
                             const std::vector<std::string>& names,
                             const std::vector<double>& sigmas,
                             const LmOptions& opts) {
  const int m = static_cast<int>(points.size());
  const int k = static_cast<int>(p0.size());
  if (static_cast<int>(names.size()) != k) {
    throw std::invalid_argument("parameter names do not match p0");
  }
  if (m < k) throw FitError("fewer points than parameters");
  if (!sigmas.empty() && static_cast<int>(sigmas.size()) != m) {
    throw std::invalid_argument("sigmas do not match points");
  }
  Problem pr{&points, &model, std::vector<double>(m, 1.0)};
  for (int i = 0; i < static_cast<int>(sigmas.size()); ++i) {
    if (!(sigmas[i] > 0.0)) throw std::invalid_argument("sigma must be > 0");
    pr.weights[i] = 1.0 / sigmas[i];
  }

  Eigen::VectorXd p = p0;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  double cost = Cost(pr, p, &r, &jac);
  if (!std::isfinite(cost)) throw FitError("model not finite at initial guess");
  double lambda = 1e-3;
  int it = 0;
  bool converged = false;
  for (; it < opts.max_iterations; ++it) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd a = jtj;
      for (int i = 0; i < k; ++i) a(i, i) += lambda * std::max(jtj(i, i), 1e-300);
      const Eigen::VectorXd step = a.ldlt().solve(jtr);
      const Eigen::VectorXd trial = p + step;
      Eigen::VectorXd r_new;
      Eigen::MatrixXd j_new;
      const double c_new = Cost(pr, trial, &r_new, &j_new);
      if (std::isfinite(c_new) && c_new <= cost) {
        const double rel = (cost - c_new) / std::max(cost, 1e-300);
        const double step_rel =
            step.norm() / std::max(p.norm(), 1e-300);
        p = trial;
        r = std::move(r_new);
        jac = std::move(j_new);
        cost = c_new;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (rel < opts.rtol || step_rel < opts.rtol || cost < 1e-30) {
          converged = true;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      converged = true;  // no downhill step left at any damping
      break;
    }
    if (converged) break;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "fit did not converge after " << opts.max_iterations
        << " iterations";
    throw FitError(msg.str());
  }

  FitResult out;
  out.names = names;
  out.params.assign(p.data(), p.data() + k);
  out.iterations = it + 1;
  out.residual_norm = std::sqrt(cost);
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (!lu.isInvertible()) throw FitError("singular normal matrix");
  Eigen::MatrixXd cov = lu.inverse();
  if (sigmas.empty()) {
    const double dof = std::max(1, m - k);
    cov *= cost / dof;
  }
  out.covariance = 0.5 * (cov + cov.transpose());
  out.param_errors.resize(k);
  for (int i = 0; i < k; ++i) {
    out.param_errors[i] = std::sqrt(std::max(0.0, out.covariance(i, i)));
  }
  return out;
}

FitResult FitDecay(const Points& points, const std::vector<double>& sigmas,
                   const LmOptions& opts) {
  if (points.size() < 6) throw FitError("decay fit needs at least 6 points");
  Points pts = points;
  std::vector<size_t> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return points[a].first < points[b].first;
  });
  double ymin = 1e300, ymax = -1e300;
  for (size_t i = 0; i < pts.size(); ++i) {
    pts[i] = points[order[i]];
    if (pts[i].first < 0.0) throw FitError("decay fit needs n >= 0");
    ymin = std::min(ymin, pts[i].second);
    ymax = std::max(ymax, pts[i].second);
  }
  std::vector<double> sig;
  for (size_t i = 0; i < sigmas.size(); ++i) sig.push_back(sigmas[order[i]]);
  if (ymax - ymin < 1e-9) throw FitError("degenerate data: flat decay curve");

  const double a0 = std::clamp(pts.front().second - 0.5, 1e-3, 0.5);
  // Last crossing of the 1/e contrast level.
  double n0 = pts.back().first;
  for (size_t i = pts.size() - 1; i > 0; --i) {
    const double y1 = pts[i - 1].second - 0.5;
    const double y2 = pts[i].second - 0.5;
    const double lvl = a0 / std::numbers::e;
    if (y1 >= lvl && y2 < lvl) {
      const double f = (y1 - lvl) / std::max(y1 - y2, 1e-300);
      n0 = pts[i - 1].first + f * (pts[i].first - pts[i - 1].first);
      break;
    }
  }
  n0 = std::max(n0, 1e-3);

  // Parameters: A, log N_1e, log d.
  ModelFn model = [](double n, const Eigen::VectorXd& q,
                     Eigen::VectorXd* grad) {
    const double a = q(0), nn = std::exp(q(1)), d = std::exp(q(2));
    const double lr = n > 0.0 ? std::log(n / nn) : 0.0;
    const double u = n > 0.0 ? std::exp(d * lr) : 0.0;
    const double e = std::exp(-u);
    if (grad) {
      (*grad)(0) = e;
      (*grad)(1) = a * e * u * d;
      (*grad)(2) = -a * e * u * lr * d;
    }
    return a * e + 0.5;
  };

  const std::vector<std::string> names = {"A", "N_1e", "d"};
  std::optional<FitResult> best;
  double best_norm = 1e300;
  for (double d0 : {1.0, 2.0, 0.6, 3.0}) {
    Eigen::VectorXd q0(3);
    q0 << a0, std::log(n0), std::log(d0);
    try {
      FitResult r = LevenbergMarquardt(pts, model, q0, names, sig, opts);
      if (r.residual_norm < best_norm) {
        best_norm = r.residual_norm;
        best = std::move(r);
      }
    } catch (const FitError&) {
    }
  }
  if (!best) throw FitError("decay fit did not converge");
  FitResult out = std::move(*best);
  // Back to (A, N_1e, d) with the delta method.
  Eigen::Vector3d jt(1.0, std::exp(out.params[1]), std::exp(out.params[2]));
  out.params[1] = jt(1);
  out.params[2] = jt(2);
  out.covariance = jt.asDiagonal() * out.covariance * jt.asDiagonal();
  for (int i = 0; i < 3; ++i) {
    out.param_errors[i] = std::sqrt(std::max(0.0, out.covariance(i, i)));
  }
  return out;
}

namespace {

struct Peak {
  double omega = 0.0;
  std::complex<double> amp;  // a e^{i phase}
};

double MedianSpacing(const Points& pts) {
  std::vector<double> dt;
  for (size_t i = 1; i < pts.size(); ++i) {
    dt.push_back(pts[i].first - pts[i - 1].first);
  }
  std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
  return dt[dt.size() / 2];
}

Peak SpectralPeak(const Points& pts, const std::vector<double>& y) {
  const double span = pts.back().first - pts.front().first;
  const double nyquist = std::numbers::pi / MedianSpacing(pts);
  const double dw = 2.0 * std::numbers::pi / span / 8.0;
  Peak best;
  double best_pow = -1.0;
  for (double w = dw; w <= nyquist; w += dw) {
    std::complex<double> s = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      s += y[i] * std::exp(std::complex<double>(0.0, -w * pts[i].first));
    }
    if (std::norm(s) > best_pow) {
      best_pow = std::norm(s);
      best.omega = w;
      best.amp = 2.0 * s / double(pts.size());
    }
  }
  return best;
}

double Damped(double t, double k) { return std::exp(-k * t * t); }

}  // namespace

FitResult FitRamsey(const Points& points, RamseyModel kind,
                    const LmOptions& opts) {
  if (points.size() < 10) throw FitError("Ramsey fit needs at least 10 points");
  Points pts = points;
  std::sort(pts.begin(), pts.end());
  double mean = 0.0;
  for (const auto& p : pts) mean += p.second;
  mean /= double(pts.size());
  std::vector<double> y;
  double maxdev = 0.0;
  for (const auto& p : pts) {
    y.push_back(p.second - mean);
    maxdev = std::max(maxdev, std::abs(p.second - mean));
  }
  if (maxdev < 1e-12) throw FitError("degenerate data: zero amplitude");
  const double span = pts.back().first - pts.front().first;
  if (!(span > 0.0)) throw FitError("degenerate data: all times equal");
  const double nyquist_w = std::numbers::pi / MedianSpacing(pts);
  // Fit in units of the time span; rescaled on return.
  const double ts = span;
  for (auto& p : pts) p.first /= ts;
  const double k0 = 0.1;

  ModelFn single = [](double t, const Eigen::VectorXd& p,
                      Eigen::VectorXd* grad) {
    const double env = Damped(t, p(3));
    const double arg = p(1) * t + p(2);
    const double c = std::cos(arg), s = std::sin(arg);
    if (grad) {
      (*grad)(0) = env * c;
      (*grad)(1) = -p(0) * env * s * t;
      (*grad)(2) = -p(0) * env * s;
      (*grad)(3) = -t * t * p(0) * env * c;
      (*grad)(4) = 1.0;
    }
    return p(0) * env * c + p(4);
  };
  const Peak pk = SpectralPeak(pts, y);
  Eigen::VectorXd p0(5);
  p0 << std::abs(pk.amp), pk.omega, std::arg(pk.amp), k0, mean;
  FitResult one = LevenbergMarquardt(
      pts, single, p0, {"amplitude", "omega", "phase", "k", "offset"}, {},
      opts);
  if (one.params[0] < 0.0) {
    one.params[0] = -one.params[0];
    one.params[2] += std::numbers::pi;
  }
  one.params[2] = std::remainder(one.params[2], 2.0 * std::numbers::pi);

  FitResult out;
  if (kind == RamseyModel::kSingleFreq) {
    out = std::move(one);
    const double k = out.params[3];
    out.names.push_back("T2");
    out.params.push_back(k > 0.0 ? 1.0 / std::sqrt(k) : INFINITY);
    out.param_errors.push_back(
        k > 0.0 ? 0.5 * out.param_errors[3] / std::pow(k, 1.5) : INFINITY);
  } else {
    std::vector<double> resid(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      resid[i] = pts[i].second - single(pts[i].first,
                                        Eigen::Map<const Eigen::VectorXd>(
                                            one.params.data(), 5),
                                        nullptr);
    }
    const Peak pk2 = SpectralPeak(pts, resid);
    ModelFn two = [](double t, const Eigen::VectorXd& p,
                     Eigen::VectorXd* grad) {
      const double env = Damped(t, p(6));
      const double a1 = p(1) * t + p(2), a2 = p(4) * t + p(5);
      const double c1 = std::cos(a1), s1 = std::sin(a1);
      const double c2 = std::cos(a2), s2 = std::sin(a2);
      const double osc = p(0) * c1 + p(3) * c2;
      if (grad) {
        (*grad)(0) = env * c1;
        (*grad)(1) = -p(0) * env * s1 * t;
        (*grad)(2) = -p(0) * env * s1;
        (*grad)(3) = env * c2;
        (*grad)(4) = -p(3) * env * s2 * t;
        (*grad)(5) = -p(3) * env * s2;
        (*grad)(6) = -t * t * env * osc;
        (*grad)(7) = 1.0;
      }
      return env * osc + p(7);
    };
    Eigen::VectorXd q0(8);
    q0 << one.params[0], one.params[1], one.params[2],
        std::max(std::abs(pk2.amp), 1e-6), pk2.omega, std::arg(pk2.amp),
        std::max(one.params[3], 0.0), one.params[4];
    out = LevenbergMarquardt(pts, two, q0,
                             {"amplitude1", "omega1", "phase1", "amplitude2",
                              "omega2", "phase2", "k", "offset"},
                             {}, opts);
    for (int a : {0, 3}) {
      if (out.params[a] < 0.0) {
        out.params[a] = -out.params[a];
        out.params[a + 2] += std::numbers::pi;
      }
      out.params[a + 2] =
          std::remainder(out.params[a + 2], 2.0 * std::numbers::pi);
    }
  }
  std::vector<double> scale(out.params.size(), 1.0);
  for (size_t i = 0; i < out.names.size(); ++i) {
    if (out.names[i].rfind("omega", 0) == 0) scale[i] = 1.0 / ts;
    if (out.names[i] == "k") scale[i] = 1.0 / (ts * ts);
    if (out.names[i] == "T2") scale[i] = ts;
  }
  for (size_t i = 0; i < scale.size(); ++i) {
    out.params[i] *= scale[i];
    out.param_errors[i] *= scale[i];
  }
  const Eigen::Index nc = out.covariance.rows();
  for (Eigen::Index i = 0; i < nc; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) {
      out.covariance(i, j) *= scale[i] * scale[j];
    }
  }
  for (size_t i = 0; i < out.names.size(); ++i) {
    if (out.names[i].rfind("omega", 0) == 0 &&
        std::abs(out.params[i]) > nyquist_w) {
      out.warnings.push_back("aliasing: fitted " + out.names[i] +
                             " exceeds the sampling Nyquist frequency");
    }
  }
  return out;
}

FitResult FitLine(const Points& points) {
  if (points.size() < 2) throw FitError("line fit needs at least 2 points");
  const double m = double(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw FitError("degenerate data: all x equal");
  const double slope = (m * sxy - sx * sy) / det;
  const double icpt = (sy - slope * sx) / m;
  double ss = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - slope * x - icpt;
    ss += r * r;
  }
  const double s2 = points.size() > 2 ? ss / (m - 2.0) : 0.0;
  FitResult out;
  out.names = {"slope", "intercept"};
  out.params = {slope, icpt};
  out.covariance.resize(2, 2);
  out.covariance << m / det, -sx / det, -sx / det, sxx / det;
  out.covariance *= s2;
  out.param_errors = {std::sqrt(out.covariance(0, 0)),
                      std::sqrt(out.covariance(1, 1))};
  out.residual_norm = std::sqrt(ss);
  out.iterations = 1;
  return out;
}

}  // namespace qgt
