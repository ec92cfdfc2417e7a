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

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbsched/config.hpp"

namespace rbsched {

/// Right-continuous step CDF over a sorted sample.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const noexcept;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }
  /// Smallest sample x with F(x) >= target (target in (0, 1]).
  double order_statistic_quantile(double target) const;

 private:
  std::vector<double> sorted_;
};

/// Smallest x >= 0 with cdf(x) >= target, by bisection. The upper end starts at
/// `initial_upper` and doubles until cdf exceeds the target; iteration stops
/// once the bracket is narrower than rel_tol * (1 + x).
double bisect_quantile(const std::function<double(double)>& cdf, double target,
                       double initial_upper = 1.0, double rel_tol = 1e-9);

enum class CalibrationMethod { empirical, closed_form };

const char* to_string(CalibrationMethod method) noexcept;

/// beta[n][k][r], the per-user, per-base-station feedback thresholds.
class BetaTable {
 public:
  BetaTable() = default;
  BetaTable(int M, int K, int Q, double target, CalibrationMethod method);

  int M() const noexcept { return M_; }
  int K() const noexcept { return K_; }
  int Q() const noexcept { return Q_; }
  double target() const noexcept { return target_; }
  CalibrationMethod method() const noexcept { return method_; }

  double& at(int n, int k, int r) noexcept { return values_[index(n, k, r)]; }
  double at(int n, int k, int r) const noexcept { return values_[index(n, k, r)]; }
  const std::vector<double>& values() const noexcept { return values_; }

  double min() const noexcept;
  double max() const noexcept;
  double mean() const noexcept;
  /// Every beta >= 1, the regime the rate analysis assumes.
  bool in_analysis_regime() const noexcept { return min() >= 1.0; }
  bool matches(const Dimensions& dims) const noexcept {
    return M_ == dims.M && K_ == dims.K && Q_ == dims.Q;
  }

 private:
  std::size_t index(int n, int k, int r) const noexcept {
    return (static_cast<std::size_t>(n) * K_ + k) * Q_ + r;
  }

  int M_ = 0;
  int K_ = 0;
  int Q_ = 0;
  double target_ = 0.0;
  CalibrationMethod method_ = CalibrationMethod::empirical;
  std::vector<double> values_;
};

/// 1 - 1 / (K * N_r).
double quantile_target(const Dimensions& dims) noexcept;

/// Raised when a calibration cannot resolve the target quantile.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, std::vector<std::array<int, 3>> offenders)
      : std::runtime_error(what), offenders_(std::move(offenders)) {}
  /// (n, k, r) triples whose CDF had too few samples.
  const std::vector<std::array<int, 3>>& offenders() const noexcept { return offenders_; }

 private:
  std::vector<std::array<int, 3>> offenders_;
};

struct CalibrationOptions {
  /// Users whose attenuation rows make their SINR identically distributed
  /// share one pooled empirical CDF.
  bool pool_identical = true;
  int workers = 1;
};

/// Empirical calibration. Each (n, k, r) CDF holds at least
/// `samples_per_user` SINR draws (pooled over beams and receive antennas of
/// the same base-station); every CDF must hold >= 10 * K * N_r samples.
BetaTable calibrate_beta(const NetworkConfig& config, std::uint64_t samples_per_user,
                         const CalibrationOptions& options = {});

/// Same, with an explicit target (e.g. 1 - 1/K for the single-antenna rule).
BetaTable calibrate_beta(const NetworkConfig& config, std::uint64_t samples_per_user,
                         double target, const CalibrationOptions& options);

/// Bisection on the closed-form SINR CDF; homogeneous profiles only
/// (throws UnsupportedError otherwise).
double analytic_beta_homogeneous(const NetworkConfig& config, double target);

/// BetaTable filled from analytic_beta_homogeneous at the usual target.
BetaTable calibrate_closed_form(const NetworkConfig& config);

/// CSV with header n,k,r,beta (0-based indices).
void write_beta_csv(std::ostream& out, const BetaTable& table);
/// Reads a table written by write_beta_csv; dimensions must match.
BetaTable read_beta_csv(std::istream& in, const Dimensions& dims, double target,
                        CalibrationMethod method);

}  // namespace rbsched
