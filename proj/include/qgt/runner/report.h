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

#ifndef QGT_RUNNER_REPORT_H_
#define QGT_RUNNER_REPORT_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgt/calib/correlators.h"
#include "qgt/runner/config.h"
#include "qgt/runner/records.h"

namespace qgt {

struct RateSummary {
  long trials = 0;
  double total_time = 0.0;  // simulated seconds
  double rate = 0.0;        // trials per simulated second
  double mean_attempts = 0.0;  // attempts per success, retries included
  double expected_attempts = 0.0;  // truncated-geometric model
  double attempts_stderr = 0.0;
  double z_score = 0.0;
  bool zero_click = false;
};

// Informational: simulated time excludes lab overheads.
RateSummary ReportRates(const std::vector<ShotRecord>& records,
                        double click_probability, int n_max);

// Expected attempts per heralded success, timeouts included.
double ExpectedAttemptsPerSuccess(double click_probability, int n_max);

struct Analysis {
  nlohmann::ordered_json report;
  std::vector<CorrelatorEstimate> correlators;  // shot estimator
  std::vector<CorrelatorEstimate> correlators_exact;
  // Headline fidelity (truth-table average for cnot_truth_table).
  double fidelity = 0.0;
  double fidelity_sigma = 0.0;
  double fidelity_exact = 0.0;
  double fidelity_exact_sigma = 0.0;
  double post_fidelity = 0.0;
  double post_fidelity_exact = 0.0;
  std::vector<std::string> band_failures;
};

Analysis Analyze(const ExperimentConfig& cfg,
                 const std::vector<ShotRecord>& records);

std::string SummaryText(const Analysis& a);

struct RunOutputs {
  std::string records_path;
  std::string report_path;
  std::string correlators_path;
  Analysis analysis;
};

// Runs all trials and writes records.jsonl, report.json and
// correlators.csv into cfg.out_dir.
RunOutputs RunExperiment(const ExperimentConfig& cfg);

}  // namespace qgt

#endif  // QGT_RUNNER_REPORT_H_
