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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbsched/calibration.hpp"
#include "rbsched/config_io.hpp"
#include "rbsched/metrics.hpp"

namespace rbsched {

struct RunOptions {
  int workers = 1;
  std::string beta_cache_dir;         // empty: no caching
  std::string log_path;               // JSON-lines round log, empty: none
  std::uint64_t integral_samples = 20000;
};

/// Calibrates per `settings`, reading / writing `options.beta_cache_dir` when set.
BetaTable obtain_beta(const NetworkConfig& network, const CalibrationSettings& settings,
                      const AttenuationSpec& attenuation, const RunOptions& options);

/// Runs `trials` rounds with a fixed beta table and aggregates them. When `log`
/// is non-null one JSON record per round is appended, in trial order.
PointResult run_point(const NetworkConfig& network, const BetaTable& beta, std::uint64_t trials,
                      const RunOptions& options, std::ostream* log = nullptr);

/// Calibrate and simulate every point of the sweep, in expand_sweep() order.
std::vector<PointResult> run_sweep(const ExperimentConfig& config, const RunOptions& options);

/// Header: M,Q,N_t,N_r,K,rho_dB,trials,mean_sum_rate,se_sum_rate,mean_fb_bits,
/// se_fb_bits,chisq_p,ref_curve,lower_bound,beta_min,beta_max,analysis_regime
void write_results_csv(std::ostream& out, std::span<const PointResult> results);
extern const char* const kResultsCsvHeader;

struct CalibrationRow {
  Dimensions dims;
  double rho_dB = 0.0;
  double beta_mean = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  CalibrationMethod method = CalibrationMethod::empirical;
  std::uint64_t samples = 0;
  bool analysis_regime = false;
};

/// beta over the config's calibrate grid (K x rho_dB, K-major within rho).
std::vector<CalibrationRow> run_calibration_grid(const ExperimentConfig& config,
                                                 const RunOptions& options);

/// Header: K,rho_dB,beta,beta_min,beta_max,method,samples,analysis_regime
void write_calibration_csv(std::ostream& out, std::span<const CalibrationRow> rows);
extern const char* const kCalibrationCsvHeader;

/// Sidecar: config hash, version string and the canonical config.
nlohmann::json run_metadata(const ExperimentConfig& config, const std::string& kind);

std::string version_string();

/// Desk-scale presets for the four figure sweeps, seeded from `seed`.
ExperimentConfig figure_threshold_config(std::uint64_t seed);
ExperimentConfig figure_sum_rate_config(std::uint64_t seed, std::uint64_t trials);
ExperimentConfig figure_feedback_config(std::uint64_t seed, std::uint64_t trials);
ExperimentConfig figure_clustering_config(std::uint64_t seed, std::uint64_t trials);

/// Writes fig1.csv .. fig4.csv (plus .meta.json sidecars) into `out_dir`.
void sweep_figures(const std::string& out_dir, std::uint64_t seed, std::uint64_t trials,
                   const RunOptions& options);

}  // namespace rbsched
