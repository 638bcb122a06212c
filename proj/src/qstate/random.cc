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

#include "qgt/qstate/random.h"

#include <cmath>
#include <numbers>

namespace qgt {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return Mix64(Mix64(master) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

double RandomStream::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int64_t RandomStream::GeometricTrials(double q, int64_t max_trials) {
  if (q <= 0.0) return 0;
  if (q >= 1.0) return 1;
  // Inverse CDF: P(K > k) = (1 - q)^k.
  const double u = 1.0 - Uniform();  // (0, 1]
  const double k = std::ceil(std::log(u) / std::log1p(-q));
  const double trials = k < 1.0 ? 1.0 : k;
  if (trials > static_cast<double>(max_trials)) return 0;
  return static_cast<int64_t>(trials);
}

double RandomStream::Normal() {
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int64_t RandomStream::Binomial(int64_t n, double p) {
  int64_t k = 0;
  for (int64_t i = 0; i < n; ++i) k += Uniform() < p;
  return k;
}

}  // namespace qgt
