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
#include <span>
#include <vector>

#include "rbsched/config.hpp"
#include "rbsched/scheduler.hpp"
#include "rbsched/stats.hpp"

namespace rbsched {

/// Sum over served beams of log2(1 + SINR), bits/s/Hz.
double sum_rate(const ScheduleOutcome& outcome);
/// Same, per super-cell; sums to sum_rate().
std::vector<double> cell_sum_rates(const ScheduleOutcome& outcome);

struct FeedbackStats {
  std::vector<MeanSe> per_cell;  // mean bits per round, per super-cell
  MeanSe per_cell_average;       // per-round average over super-cells
  MeanSe network_total;          // per-round sum over super-cells
};

/// Throws std::invalid_argument on an empty input.
FeedbackStats feedback_stats(std::span<const ScheduleOutcome> outcomes);

struct FairnessReport {
  std::vector<std::uint64_t> counts;  // streams served per user, indexed (n, k)
  std::vector<double> frequency;      // counts normalized per super-cell
  ChiSquare chi_square;               // pooled over super-cells
};

/// Served-stream counts of every user across outcomes plus uniformity test.
FairnessReport fairness_histogram(std::span<const ScheduleOutcome> outcomes);
/// Same from pre-aggregated counts indexed (n, k).
FairnessReport fairness_from_counts(const Dimensions& dims, std::vector<std::uint64_t> counts);

/// One evaluated sweep point.
struct PointResult {
  Dimensions dims;
  double rho_dB = 0.0;
  std::uint64_t trials = 0;
  MeanSe sum_rate;                   // network
  std::vector<MeanSe> cell_rate;     // per super-cell
  MeanSe feedback_bits;              // per super-cell, averaged over super-cells
  MeanSe candidate_set_size;         // mean |H| over all (n, r, l)
  FairnessReport fairness;
  double reference_curve = 0.0;      // M Q N_t log2 log2(K N_r)
  double lower_bound = 0.0;          // sum over super-cells of the numeric rate lower bound
  std::vector<double> cell_lower_bound;
  double beta_min = 0.0;
  double beta_max = 0.0;
  bool analysis_regime = false;      // all beta >= 1
  bool sets_disjoint = true;         // in every trial
};

/// M Q N_t log2 log2(K N_r); NaN when K N_r <= 1.
double scaling_reference(const Dimensions& dims);

struct ScalingRow {
  int K = 0;
  double sum_rate = 0.0;
  double sum_rate_se = 0.0;
  double reference = 0.0;        // unit constant
  double fitted_reference = 0.0; // constant fitted at the largest K
  double lower_bound = 0.0;
};

struct ScalingReport {
  double fitted_constant = 0.0;
  std::vector<ScalingRow> rows;
};

/// Requires >= 3 points spanning >= 2 decades of K (std::invalid_argument).
ScalingReport scaling_report(std::span<const PointResult> points);

}  // namespace rbsched
