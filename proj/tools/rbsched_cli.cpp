// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rbsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything goes through the C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbsched/rbsched.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  int workers = 1;
  std::string beta_cache;
  std::string log;
  std::string dump_sinr;
};

int report(rbs_status status, const char* what) {
  if (status == RBS_OK) return kExitOk;
  const std::string field = rbs_last_error_field();
  std::cerr << "rbsched " << what << ": " << rbs_last_error();
  if (status == RBS_ERR_CONFIG && !field.empty()) std::cerr << " [field: " << field << "]";
  std::cerr << '\n';
  return status == RBS_ERR_CONFIG ? kExitConfig : kExitFailure;
}

rbs_run_options run_options(const Common& c) {
  rbs_run_options o{};
  o.workers = c.workers;
  o.beta_cache_dir = c.beta_cache.empty() ? nullptr : c.beta_cache.c_str();
  o.log_path = c.log.empty() ? nullptr : c.log.c_str();
  return o;
}

// Loads the config and applies command-line overrides; returns an exit code.
int load(const Common& c, rbs_config** cfg) {
  if (int rc = report(rbs_config_load(c.config.c_str(), cfg), "config")) return rc;
  if (c.seed)
    if (int rc = report(rbs_config_set_seed(*cfg, *c.seed), "config")) return rc;
  if (c.trials)
    if (int rc = report(rbs_config_set_trials(*cfg, *c.trials), "config")) return rc;
  if (c.samples)
    if (int rc = report(rbs_config_set_samples(*cfg, *c.samples), "config")) return rc;
  return kExitOk;
}

void add_common(CLI::App* cmd, Common& c, bool with_trials) {
  cmd->add_option("--config", c.config, "JSON config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output CSV path")->required();
  if (with_trials) cmd->add_option("--trials", c.trials, "trials per sweep point (>= 100)");
  cmd->add_option("--seed", c.seed, "master seed, overrides the config");
  cmd->add_option("--samples", c.samples, "calibration samples per user CDF");
  cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--beta-cache", c.beta_cache, "directory for cached beta tables");
  cmd->add_option("--log", c.log, "JSON-lines round log");
}

int run_calibrate(const Common& c) {
  rbs_config* cfg = nullptr;
  int rc = load(c, &cfg);
  if (rc == kExitOk) {
    const rbs_run_options o = run_options(c);
    rc = report(rbs_calibrate(cfg, &o, c.out.c_str()), "calibrate");
  }
  rbs_config_free(cfg);
  return rc;
}

int run_simulate(const Common& c) {
  rbs_config* cfg = nullptr;
  int rc = load(c, &cfg);
  if (rc == kExitOk) {
    const rbs_run_options o = run_options(c);
    rc = report(rbs_simulate(cfg, &o, c.out.c_str()), "simulate");
    if (rc == kExitOk && !c.dump_sinr.empty())
      rc = report(rbs_sinr_dump(cfg, 0, c.dump_sinr.c_str()), "dump-sinr");
  }
  rbs_config_free(cfg);
  return rc;
}

int run_verify(const Common& c, bool inject_fault) {
  std::uint64_t seed = 1;
  if (!c.config.empty()) {
    rbs_config* cfg = nullptr;
    int rc = load(c, &cfg);
    if (rc == kExitOk) rc = report(rbs_config_get_seed(cfg, &seed), "config");
    rbs_config_free(cfg);
    if (rc != kExitOk) return rc;
  } else if (c.seed) {
    seed = *c.seed;
  }
  const rbs_run_options o = run_options(c);
  int passed = 0;
  if (int rc = report(rbs_verify(seed, &o, inject_fault ? 1 : 0, c.out.c_str(), &passed), "verify"))
    return rc;

  std::ifstream in(c.out);
  const auto doc = nlohmann::json::parse(in);
  for (const auto& check : doc["checks"]) {
    std::printf("%s %-32s statistic=%-12.6g threshold=%-10.6g %s\n",
                check["passed"].get<bool>() ? "PASS" : "FAIL",
                check["name"].get<std::string>().c_str(), check["statistic"].get<double>(),
                check["threshold"].get<double>(), check["detail"].get<std::string>().c_str());
  }
  std::printf("%s\n", passed ? "all checks passed" : "verification FAILED");
  return passed ? kExitOk : kExitFailure;
}

int run_sweep_figs(const Common& c) {
  const rbs_run_options o = run_options(c);
  return report(rbs_sweep_figs(c.seed.value_or(1), c.trials.value_or(2000), &o, c.out.c_str()),
                "sweep-figs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-feedback random-beamforming scheduler simulator"};
  app.set_version_flag("--version", std::string(rbs_version()));
  app.require_subcommand(1);

  Common calibrate, simulate, verify, figs;
  bool inject_fault = false;

  auto* cal = app.add_subcommand("calibrate", "beta over the config's K / rho grid");
  add_common(cal, calibrate, false);

  auto* sim = app.add_subcommand("simulate", "run the configured sweep, one CSV row per point");
  add_common(sim, simulate, true);
  sim->add_option("--dump-sinr", simulate.dump_sinr,
                  "debug: write the SINR table of trial 0 of the base point");

  auto* ver = app.add_subcommand("verify", "run the invariant suites and write a JSON report");
  ver->add_option("--config", verify.config, "config file (only its seed is used)")
      ->check(CLI::ExistingFile);
  ver->add_option("--out", verify.out, "JSON report path")->capture_default_str();
  verify.out = "verify-report.json";
  ver->add_option("--seed", verify.seed, "master seed");
  ver->add_option("--workers", verify.workers, "worker threads")->check(CLI::PositiveNumber);
  ver->add_flag("--inject-fault", inject_fault, "swap the bound CDFs (negative control)");

  auto* fig = app.add_subcommand("sweep-figs", "write fig1.csv .. fig4.csv");
  fig->add_option("--out", figs.out, "output directory")->required();
  fig->add_option("--trials", figs.trials, "trials per sweep point (>= 100)");
  fig->add_option("--seed", figs.seed, "master seed");
  fig->add_option("--workers", figs.workers, "worker threads")->check(CLI::PositiveNumber);
  fig->add_option("--beta-cache", figs.beta_cache, "directory for cached beta tables");

  CLI11_PARSE(app, argc, argv);

  if (*cal) return run_calibrate(calibrate);
  if (*sim) return run_simulate(simulate);
  if (*ver) return run_verify(verify, inject_fault);
  if (*fig) return run_sweep_figs(figs);
  return kExitFailure;
}
