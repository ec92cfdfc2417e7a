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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rbsched/calibration.hpp"
#include "rbsched/config.hpp"

namespace rbsched {

/// How gamma is produced for a given set of dimensions.
struct AttenuationSpec {
  enum class Kind { scalar, log_uniform, csv };

  Kind kind = Kind::scalar;
  double value = 1.0;
  double min_dB = 0.0;
  double max_dB = 0.0;
  Granularity granularity = Granularity::per_link;
  std::string path;  // absolute, or relative to the working directory

  AttenuationProfile build(const Dimensions& dims, std::uint64_t seed) const;
  bool homogeneous() const noexcept { return kind == Kind::scalar; }
};

/// Reads a tensor dump with header n,k,m,r,gamma; every entry must be present.
AttenuationProfile read_attenuation_csv(const std::string& path, const Dimensions& dims);

struct CalibrationSettings {
  enum class Method { empirical, closed_form, automatic };

  Method method = Method::empirical;
  std::optional<std::uint64_t> samples_per_user;
  bool pool_identical = true;

  /// Explicit value, else 1000 * K * N_r with a floor of 1e5.
  std::uint64_t resolved_samples(const Dimensions& dims) const noexcept;
  /// Closed form when requested, or when `automatic` and the profile is homogeneous.
  bool use_closed_form(const AttenuationSpec& attenuation) const noexcept;
};

/// Partial override applied to the base config for one plotted series.
struct SeriesOverride {
  std::optional<int> M, Q, Nt, Nr, K;
  std::optional<double> rho_dB;
};

enum class SweepVariable { K, clusters, rho_dB, Nt };

struct SweepSpec {
  SweepVariable variable = SweepVariable::K;
  std::vector<double> values;                  // K, rho_dB or N_t values
  std::vector<std::pair<int, int>> clusters;   // (M, Q) pairs, for `clusters`
  std::vector<int> total_users;                // M * K abscissa, for `clusters`
  std::vector<SeriesOverride> series;          // empty: the base config alone
  std::uint64_t trials = 2000;
};

struct CalibrateGrid {
  std::vector<int> K;
  std::vector<double> rho_dB;
};

/// Everything read from a config file.
struct ExperimentConfig {
  Dimensions dims;
  double rho_dB = 10.0;
  AttenuationSpec attenuation;
  std::uint64_t seed = 1;
  CalibrationSettings calibration;
  SweepSpec sweep;  // absent in the file: the base point alone
  CalibrateGrid calibrate;

  /// Concrete network for given dims / rho (attenuation rebuilt for the dims).
  NetworkConfig network(const Dimensions& dims, double rho_dB) const;
  NetworkConfig network() const { return network(dims, rho_dB); }

  nlohmann::json to_json() const;
};

/// One point of an expanded sweep.
struct SweepPoint {
  Dimensions dims;
  double rho_dB = 0.0;
  std::uint64_t trials = 0;
};

/// Expands the sweep (or the single base point) in a fixed order:
/// series-major, then swept value.
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config);

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
/// Relative attenuation CSV paths resolve against the config file's directory.
ExperimentConfig load_config(const std::string& path);

/// 16 hex digits of FNV-1a over the canonical JSON form.
std::string config_hash(const nlohmann::json& canonical);

}  // namespace rbsched
