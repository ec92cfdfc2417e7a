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
#include <random>
#include <sstream>

#include "csv.hpp"
#include "parallel.hpp"
#include "rbsched/calibration.hpp"
#include "rbsched/channel.hpp"
#include "rbsched/orderstats.hpp"
#include "rbsched/scheduler.hpp"
#include "rbsched/sinr.hpp"
#include "rbsched/stats.hpp"
#include "rbsched/verify.hpp"

namespace rbsched {

using nlohmann::json;

bool VerifyReport::passed() const noexcept {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

json VerifyReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name},
                    {"statistic", c.statistic},
                    {"expected", c.expected},
                    {"threshold", c.threshold},
                    {"comparison", c.comparison},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  return {{"passed", passed()}, {"checks", list}};
}

namespace {

enum Suite : std::uint64_t {
  kHomogeneousKs = 1,
  kBounds = 2,
  kCandidates = 3,
  kCandidacy = 4,
  kMonotone = 5,
  kBracket = 6,
};

VerifyCheck below(std::string name, double statistic, double threshold, std::string detail) {
  return {std::move(name), statistic, 0.0, threshold, "statistic < threshold",
          statistic < threshold, std::move(detail)};
}

VerifyCheck near(std::string name, double statistic, double expected, double tolerance,
                 std::string detail) {
  return {std::move(name), statistic, expected, tolerance, "|statistic - expected| <= threshold",
          std::fabs(statistic - expected) <= tolerance, std::move(detail)};
}

// Pools SINR(n = 0, i = 0, r = 0, l = 0) over users and realizations.
std::vector<double> homogeneous_samples(const NetworkConfig& cfg, std::size_t realizations,
                                        int workers) {
  const int K = cfg.dims.K;
  std::vector<double> out(realizations * K);
  detail::parallel_for(realizations, workers, [&](std::size_t t) {
    const SinrTable s = compute_sinr_table(cfg, sample_channels(cfg, t));
    for (int k = 0; k < K; ++k) out[t * K + k] = s.at(0, k, 0, 0, 0);
  });
  return out;
}

void bound_checks(const VerifyOptions& opt, VerifyReport& report) {
  const Dimensions d{2, 2, 2, 1, 50};
  const NetworkConfig cfg = NetworkConfig::make(
      d, db_to_linear(10.0),
      AttenuationProfile::log_uniform(d.M, d.K, d.Q, -10.0, 10.0, Granularity::per_link,
                                      opt.seed + kBounds),
      opt.seed + kBounds);
  const std::size_t realizations = 2000;
  std::vector<double> lower(realizations * d.K), upper(realizations * d.K);
  std::vector<int> violations(realizations, 0);
  detail::parallel_for(realizations, opt.workers, [&](std::size_t t) {
    const SinrWithBounds s = compute_sinr_with_bounds(cfg, sample_channels(cfg, t));
    for (int k = 0; k < d.K; ++k) {
      lower[t * d.K + k] = s.bounds.lower.at(0, k, 0, 0, 0);
      upper[t * d.K + k] = s.bounds.upper.at(0, k, 0, 0, 0);
    }
    for (int n = 0; n < d.M; ++n)
      for (int r = 0; r < d.Q; ++r)
        for (int l = 0; l < d.Nt; ++l)
          violations[t] += verify_ordered_bounds(s.bounds.lower, s.sinr, s.bounds.upper, n, r, l);
  });

  auto f1 = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, cfg, 0);
  auto f2 = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::upper, cfg, 0);
  if (opt.fault == Fault::swap_bound_cdfs) {
    f1 = f1.swapped();
    f2 = f2.swapped();
  }
  const double d_lower = ks_statistic(lower, [&](double x) { return f1(x); });
  const double d_upper = ks_statistic(upper, [&](double x) { return f2(x); });
  const std::string n = std::to_string(lower.size());
  report.checks.push_back(below("lower_bound_cdf_ks", d_lower, 0.01,
                                "KS distance of " + n + " lower-bound samples to F1, gamma in +-10 dB"));
  report.checks.push_back(below("upper_bound_cdf_ks", d_upper, 0.01,
                                "KS distance of " + n + " upper-bound samples to F2, gamma in +-10 dB"));

  long total = 0;
  for (int v : violations) total += v;
  report.checks.push_back({"ordered_bounds_violations", static_cast<double>(total), 0.0, 0.0,
                           "statistic <= threshold", total == 0,
                           std::to_string(realizations) + " realizations, K=50, every (n, r, l)"});
}

void candidate_checks(const VerifyOptions& opt, VerifyReport& report) {
  {
    const Dimensions d{1, 2, 2, 1, 100};
    const NetworkConfig cfg = NetworkConfig::homogeneous(d, db_to_linear(10.0), opt.seed + kCandidates);
    const BetaTable beta = calibrate_closed_form(cfg);
    const std::size_t trials = 2000;
    std::vector<double> mean_size(trials);
    std::vector<char> disjoint(trials);
    detail::parallel_for(trials, opt.workers, [&](std::size_t t) {
      const ScheduleOutcome o = run_round(cfg, beta, t);
      mean_size[t] = static_cast<double>(o.candidates[0]) / d.beams_per_cell();
      disjoint[t] = o.sets_disjoint;
    });
    const MeanSe m = mean_se(mean_size);
    report.checks.push_back(near("candidate_set_mean_size", m.mean, 1.0, 0.05,
                                 "K=100, M=1, Q=2, N_t=2, 10 dB, " + std::to_string(trials) +
                                     " rounds, se=" + detail::format_double(m.se)));
    const bool all_disjoint = std::all_of(disjoint.begin(), disjoint.end(), [](char c) { return c; });
    report.checks.push_back({"candidate_sets_disjoint", all_disjoint ? 0.0 : 1.0, 0.0, 0.0,
                             "statistic <= threshold", all_disjoint,
                             "rounds with a (user, antenna) in two sets"});
  }
  {
    const Dimensions d{1, 2, 2, 2, 50};
    const NetworkConfig cfg = NetworkConfig::homogeneous(d, db_to_linear(10.0), opt.seed + kCandidacy);
    const BetaTable beta = calibrate_closed_form(cfg);
    const std::size_t trials = 2000;
    std::vector<std::size_t> members(trials);
    detail::parallel_for(trials, opt.workers, [&](std::size_t t) {
      members[t] = run_round(cfg, beta, t).candidates[0];
    });
    double total = 0.0;
    for (auto m : members) total += static_cast<double>(m);
    // membership events per (antenna, beam, round)
    const double freq =
        total / (static_cast<double>(trials) * d.K * d.Nr * d.beams_per_cell());
    report.checks.push_back(near("antenna_candidacy_frequency", freq, 0.01, 0.002,
                                 "K=50, N_r=2: expected 1/(K N_r)"));
  }
}

void numeric_checks(const VerifyOptions& opt, VerifyReport& report) {
  {
    Stream stream = RngPolicy(opt.seed).stream(StreamDomain::verification, kMonotone);
    std::uniform_int_distribution<int> pick_K(2, 20);
    long violations = 0;
    for (int pair = 0; pair < 100; ++pair) {
      const int K = pick_K(stream);
      const int j = std::uniform_int_distribution<int>(0, K - 1)(stream);
      double prev = f_monotone(0.0, j, K);
      for (int g = 1; g < 1000; ++g) {
        const double cur = f_monotone(g / 999.0, j, K);
        if (cur < prev) ++violations;
        prev = cur;
      }
    }
    report.checks.push_back({"f_monotone_violations", static_cast<double>(violations), 0.0, 0.0,
                             "statistic <= threshold", violations == 0,
                             "100 random (K <= 20, j) pairs, 1000-point grid"});
  }
  for (int K : {1, 10, 100}) {
    Stream stream = RngPolicy(opt.seed).stream(StreamDomain::verification, kBracket,
                                                static_cast<std::uint64_t>(K));
    const double est = exponential_max_mean_estimate(K, 1000000, stream);
    const MeanBracket b = exponential_max_mean_bounds(K);
    std::ostringstream note;
    note << "bracket [" << detail::format_double(b.lower) << ", "
           << detail::format_double(b.upper) << "], 1e6 stratified draws";
    report.checks.push_back({"exponential_max_mean_K" + std::to_string(K), est,
                             0.5 * (b.lower + b.upper), 0.5 * (b.upper - b.lower),
                             "|statistic - expected| <= threshold",
                             est >= b.lower && est <= b.upper, note.str()});
  }
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  {
    const Dimensions d{2, 2, 2, 1, 100};
    const NetworkConfig cfg =
        NetworkConfig::homogeneous(d, db_to_linear(10.0), options.seed + kHomogeneousKs);
    const auto samples = homogeneous_samples(cfg, 1000, options.workers);
    const ClosedFormCdf f1 = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, cfg, 0);
    const double ks = ks_statistic(samples, [&](double x) { return f1(x); });
    report.checks.push_back(below("sinr_cdf_ks_homogeneous", ks, 0.01,
                                  "1e5 SINR samples vs F1, M=2, Q=2, N_t=2, 10 dB"));
  }
  bound_checks(options, report);
  candidate_checks(options, report);
  numeric_checks(options, report);
  return report;
}

}  // namespace rbsched
