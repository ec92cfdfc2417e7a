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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rbsched/metrics.hpp"

namespace rbsched {

double sum_rate(const ScheduleOutcome& outcome) {
  double total = 0.0;
  for (const auto& b : outcome.beams) total += b.rate;
  return total;
}

std::vector<double> cell_sum_rates(const ScheduleOutcome& outcome) {
  const Dimensions& d = outcome.dims;
  std::vector<double> rates(d.M, 0.0);
  for (int n = 0; n < d.M; ++n)
    for (int r = 0; r < d.Q; ++r)
      for (int l = 0; l < d.Nt; ++l) rates[n] += outcome.beam(n, r, l).rate;
  return rates;
}

FeedbackStats feedback_stats(std::span<const ScheduleOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("feedback_stats needs at least one outcome");
  const int M = outcomes.front().dims.M;
  std::vector<std::vector<double>> per_cell(M);
  std::vector<double> average, total;
  average.reserve(outcomes.size());
  total.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    double sum = 0.0;
    for (int n = 0; n < M; ++n) {
      per_cell[n].push_back(o.feedback_bits[n]);
      sum += o.feedback_bits[n];
    }
    total.push_back(sum);
    average.push_back(sum / M);
  }
  FeedbackStats stats;
  for (const auto& v : per_cell) stats.per_cell.push_back(mean_se(v));
  stats.per_cell_average = mean_se(average);
  stats.network_total = mean_se(total);
  return stats;
}

FairnessReport fairness_from_counts(const Dimensions& dims, std::vector<std::uint64_t> counts) {
  const std::size_t K = dims.K;
  if (counts.size() != static_cast<std::size_t>(dims.M) * K)
    throw std::invalid_argument("fairness counts must be indexed (n, k)");
  FairnessReport rep;
  rep.frequency.assign(counts.size(), 0.0);
  double statistic = 0.0;
  int dof = 0;
  for (int n = 0; n < dims.M; ++n) {
    double cell_total = 0.0;
    for (std::size_t k = 0; k < K; ++k) cell_total += static_cast<double>(counts[n * K + k]);
    if (cell_total <= 0.0 || K < 2) continue;
    const double expected = cell_total / static_cast<double>(K);
    for (std::size_t k = 0; k < K; ++k) {
      const double c = static_cast<double>(counts[n * K + k]);
      rep.frequency[n * K + k] = c / cell_total;
      statistic += (c - expected) * (c - expected) / expected;
    }
    dof += static_cast<int>(K) - 1;
  }
  rep.chi_square = {statistic, dof, dof > 0 ? chi_square_survival(statistic, dof) : 1.0};
  rep.counts = std::move(counts);
  return rep;
}

FairnessReport fairness_histogram(std::span<const ScheduleOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("fairness_histogram needs at least one outcome");
  const Dimensions& d = outcomes.front().dims;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(d.M) * d.K, 0);
  for (const auto& o : outcomes)
    for (int n = 0; n < d.M; ++n)
      for (int r = 0; r < d.Q; ++r)
        for (int l = 0; l < d.Nt; ++l)
          if (const auto& u = o.beam(n, r, l).user) ++counts[static_cast<std::size_t>(n) * d.K + u->k];
  return fairness_from_counts(d, std::move(counts));
}

double scaling_reference(const Dimensions& dims) {
  const double users = static_cast<double>(dims.K) * dims.Nr;
  if (users <= 1.0) return std::numeric_limits<double>::quiet_NaN();
  return dims.total_beams() * std::log2(std::log2(users));
}

ScalingReport scaling_report(std::span<const PointResult> points) {
  if (points.size() < 3) throw std::invalid_argument("scaling_report needs at least 3 points");
  std::vector<const PointResult*> sorted;
  for (const auto& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const PointResult* a, const PointResult* b) { return a->dims.K < b->dims.K; });
  if (static_cast<double>(sorted.back()->dims.K) < 100.0 * sorted.front()->dims.K)
    throw std::invalid_argument("scaling_report needs K values spanning two decades");

  ScalingReport rep;
  const PointResult& last = *sorted.back();
  const double ref_last = scaling_reference(last.dims);
  rep.fitted_constant = ref_last > 0.0 ? last.sum_rate.mean / ref_last
                                       : std::numeric_limits<double>::quiet_NaN();
  for (const PointResult* p : sorted) {
    const double ref = scaling_reference(p->dims);
    rep.rows.push_back({p->dims.K, p->sum_rate.mean, p->sum_rate.se, ref,
                        rep.fitted_constant * ref, p->lower_bound});
  }
  return rep;
}

}  // namespace rbsched
