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
#include <stdexcept>
#include <string>
#include <vector>

namespace rbsched {

/// Raised when a configuration value is invalid. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when a file cannot be read or written, or is malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is requested for a configuration it does not cover.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Network dimensions. Indices used throughout the library are 0-based.
struct Dimensions {
  int M = 1;   // super-cells
  int Q = 1;   // base-stations per super-cell
  int Nt = 1;  // transmit antennas per base-station
  int Nr = 1;  // receive antennas per user
  int K = 1;   // users per super-cell

  int beams_per_cell() const noexcept { return Q * Nt; }
  int total_beams() const noexcept { return M * Q * Nt; }
  int total_users() const noexcept { return M * K; }
  bool operator==(const Dimensions&) const = default;
};

/// Per super-cell extremes of the attenuation profile.
struct AttenuationExtremes {
  double zeta_min;  // min over (m, k, r)
  double zeta_max;  // max over (m, k, r)
  double eta_min;   // min over (k, r) of the serving-cell entries
  double eta_max;   // max over (k, r) of the serving-cell entries
};

enum class Granularity { per_link, per_user };

/// gamma[n][k][m][r]: combined power / path-loss coefficient between
/// base-station r of super-cell m and user k of super-cell n.
class AttenuationProfile {
 public:
  AttenuationProfile() = default;

  static AttenuationProfile homogeneous(int M, int K, int Q, double value = 1.0);
  /// Entries drawn log-uniformly in [min_dB, max_dB]. With `per_user`
  /// granularity every link of a user shares one draw.
  static AttenuationProfile log_uniform(int M, int K, int Q, double min_dB, double max_dB,
                                        Granularity granularity, std::uint64_t seed);
  static AttenuationProfile from_values(int M, int K, int Q, std::vector<double> values);

  int M() const noexcept { return M_; }
  int K() const noexcept { return K_; }
  int Q() const noexcept { return Q_; }

  double operator()(int n, int k, int m, int r) const noexcept {
    return values_[index(n, k, m, r)];
  }
  const std::vector<double>& values() const noexcept { return values_; }

  /// True when every entry is identical.
  bool is_homogeneous() const noexcept;
  AttenuationExtremes extremes(int n) const;

  /// Throws ConfigError("attenuation", ...) on shape mismatch or non-positive entries.
  void validate(const Dimensions& dims) const;

 private:
  AttenuationProfile(int M, int K, int Q, std::vector<double> values)
      : M_(M), K_(K), Q_(Q), values_(std::move(values)) {}
  std::size_t index(int n, int k, int m, int r) const noexcept {
    return ((static_cast<std::size_t>(n) * K_ + k) * M_ + m) * Q_ + r;
  }

  int M_ = 0;
  int K_ = 0;
  int Q_ = 0;
  std::vector<double> values_;
};

/// Full description of a simulated network. `rho` is linear (P / N_t).
struct NetworkConfig {
  Dimensions dims;
  double rho = 10.0;
  AttenuationProfile attenuation;
  std::uint64_t seed = 1;

  /// Validates and returns a config; throws ConfigError naming the field.
  static NetworkConfig make(const Dimensions& dims, double rho, AttenuationProfile attenuation,
                            std::uint64_t seed);
  /// Homogeneous (gamma = 1) convenience constructor.
  static NetworkConfig homogeneous(const Dimensions& dims, double rho, std::uint64_t seed = 1);

  void validate() const;
};

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

/// ceil(log2(Q * N_t)): bits needed to index one beam of a super-cell.
int feedback_bits_per_message(const Dimensions& dims) noexcept;

}  // namespace rbsched
