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

// qgt: run, validate and report two-node network experiments.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgt/runner/config.h"
#include "qgt/runner/experiment.h"
#include "qgt/runner/report.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBand = 3;

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::vector<std::string> noise_off;
  long seed = -1;
  long shots = -1;
  int workers = -1;
  std::string out;
  bool postselect = false;
};

qgt::ExperimentConfig Load(const Common& c) {
  qgt::ExperimentConfig cfg =
      c.config.empty() ? qgt::ExperimentConfig{} : qgt::LoadConfig(c.config);
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw qgt::ConfigError("--set expects key=value, got '" + s + "'");
    }
    qgt::SetConfigValue(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& n : c.noise_off) {
    try {
      cfg.setup.noise.Set(n, false);
    } catch (const std::invalid_argument& e) {
      throw qgt::ConfigError(std::string("--noise-off: ") + e.what());
    }
  }
  if (c.seed >= 0) cfg.seed = static_cast<uint64_t>(c.seed);
  if (c.shots >= 0) cfg.shots = c.shots;
  if (c.workers >= 0) cfg.workers = c.workers;
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.postselect) cfg.postselect_analysis = true;
  cfg.Validate();
  return cfg;
}

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "flat key = value config file");
  app->add_option("--set", c.sets, "override one config key (key=value)");
  app->add_option("--noise-off", c.noise_off,
                  "disable a noise channel (herald, dephasing, depolarizing, "
                  "readout, mapping, init, quantization)");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--shots", c.shots, "number of trials");
  app->add_option("--workers", c.workers, "worker threads");
  app->add_option("--out", c.out, "output directory");
  app->add_flag("--postselect-analysis", c.postselect,
                "also report fidelities conditioned on reported mA = mB = 0");
}

int Run(const Common& c, bool check) {
  const qgt::ExperimentConfig cfg = Load(c);
  const qgt::RunOutputs out = qgt::RunExperiment(cfg);
  std::cout << qgt::SummaryText(out.analysis);
  std::cout << "records: " << out.records_path << "\nreport: "
            << out.report_path << "\ncorrelators: " << out.correlators_path
            << '\n';
  if (check && !out.analysis.band_failures.empty()) return kExitBand;
  return 0;
}

int Validate(const Common& c) {
  qgt::ExperimentConfig cfg =
      c.config.empty() ? qgt::ExperimentConfig{} : qgt::LoadConfig(c.config);
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw qgt::ConfigError("--set expects key=value, got '" + s + "'");
    }
    qgt::SetConfigValue(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  const qgt::TimingReport t = qgt::ValidateTiming(cfg.setup);
  std::printf("L alice = %.6f us\nL bob   = %.6f us\n", t.L_alice * 1e6,
              t.L_bob * 1e6);
  std::printf("tau alice = %.6f us (derived)\ntau bob   = %.6f us\n",
              t.tau_alice * 1e6, t.tau_bob * 1e6);
  for (const auto& v : t.violations) std::printf("violation: %s\n", v.c_str());
  if (!t.ok) return kExitConfig;
  cfg.Validate();
  std::printf("ok\n");
  return 0;
}

int Report(const Common& c, const std::string& records_path, bool check) {
  const qgt::ExperimentConfig cfg = Load(c);
  const auto records = qgt::ReadRecords(records_path);
  const qgt::Analysis a = qgt::Analyze(cfg, records);
  std::cout << qgt::SummaryText(a);
  if (check && !a.band_failures.empty()) return kExitBand;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgt: two-node quantum network experiment simulator"};
  app.require_subcommand(1);
  Common common;
  bool check = false;
  std::string records;

  CLI::App* run = app.add_subcommand("run", "run an experiment campaign");
  AddCommon(run, common);
  run->add_flag("--check", check, "exit 3 when a reference band is missed");

  CLI::App* validate =
      app.add_subcommand("validate", "check timing and configuration");
  validate->add_option("--config", common.config, "config file");
  validate->add_option("--set", common.sets, "override one key (key=value)");

  CLI::App* report =
      app.add_subcommand("report", "re-analyze an existing records file");
  AddCommon(report, common);
  report->add_option("--records", records, "records.jsonl")->required();
  report->add_flag("--check", check, "exit 3 when a reference band is missed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }
  try {
    if (*run) return Run(common, check);
    if (*validate) return Validate(common);
    if (*report) return Report(common, records, check);
  } catch (const qgt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
