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

#ifndef QGT_QSTATE_RANDOM_H_
#define QGT_QSTATE_RANDOM_H_

#include <cstdint>
#include <random>

namespace qgt {

// SplitMix64 finalizer; used to derive independent per-trial seeds.
uint64_t Mix64(uint64_t x);
uint64_t DeriveSeed(uint64_t master, uint64_t index);

// Seeded stream with platform-independent sampling helpers. The standard
// distributions are avoided on purpose since their output is not portable.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  bool Bernoulli(double p) { return Uniform() < p; }
  // Number of Bernoulli(q) trials up to and including the first success.
  // Returns 0 when the first success would come after max_trials.
  int64_t GeometricTrials(double q, int64_t max_trials);
  double Normal();
  int64_t Binomial(int64_t n, double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qgt

#endif  // QGT_QSTATE_RANDOM_H_
