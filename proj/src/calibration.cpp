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
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "csv.hpp"
#include "parallel.hpp"
#include "rbsched/calibration.hpp"
#include "rbsched/channel.hpp"
#include "rbsched/sinr.hpp"

namespace rbsched {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const noexcept {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::order_statistic_quantile(double target) const {
  if (sorted_.empty()) throw std::logic_error("quantile of an empty sample");
  if (!(target > 0.0) || target > 1.0) throw std::domain_error("target must be in (0, 1]");
  const double n = static_cast<double>(sorted_.size());
  auto m = static_cast<std::size_t>(std::ceil(target * n));
  while (m > 1 && static_cast<double>(m - 1) / n >= target) --m;
  m = std::clamp<std::size_t>(m, 1, sorted_.size());
  return sorted_[m - 1];
}

double bisect_quantile(const std::function<double(double)>& cdf, double target,
                       double initial_upper, double rel_tol) {
  if (std::isnan(target) || target > 1.0) throw std::domain_error("target must be in [0, 1]");
  if (target <= 0.0) return 0.0;
  if (!(initial_upper > 0.0)) throw std::invalid_argument("initial_upper must be positive");
  double lo = 0.0;
  double hi = initial_upper;
  int doublings = 0;
  while (cdf(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1100 || !std::isfinite(hi))
      throw std::domain_error("target quantile not reached while growing the bracket");
  }
  while (hi - lo > rel_tol * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

const char* to_string(CalibrationMethod method) noexcept {
  return method == CalibrationMethod::closed_form ? "closed_form" : "empirical";
}

BetaTable::BetaTable(int M, int K, int Q, double target, CalibrationMethod method)
    : M_(M), K_(K), Q_(Q), target_(target), method_(method),
      values_(static_cast<std::size_t>(M) * K * Q, 0.0) {}

double BetaTable::min() const noexcept {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}
double BetaTable::max() const noexcept {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}
double BetaTable::mean() const noexcept {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double quantile_target(const Dimensions& dims) noexcept {
  return 1.0 - 1.0 / (static_cast<double>(dims.K) * dims.Nr);
}

namespace {

using Triple = std::array<int, 3>;

// (n, k, r) triples grouped by distributional identity. The SINR of
// (n, k, r) is a function of gamma[n][k][n][r] and of the multiset of the
// row gamma[n][k][.][.], so equal keys mean identical marginals.
std::vector<std::vector<Triple>> group_users(const NetworkConfig& cfg, bool pool) {
  const Dimensions& d = cfg.dims;
  std::vector<std::vector<Triple>> classes;
  if (!pool) {
    for (int n = 0; n < d.M; ++n)
      for (int k = 0; k < d.K; ++k)
        for (int r = 0; r < d.Q; ++r) classes.push_back({Triple{n, k, r}});
    return classes;
  }
  std::map<std::vector<double>, std::size_t> index;
  for (int n = 0; n < d.M; ++n) {
    for (int k = 0; k < d.K; ++k) {
      std::vector<double> row;
      row.reserve(static_cast<std::size_t>(d.M) * d.Q + 1);
      for (int m = 0; m < d.M; ++m)
        for (int r = 0; r < d.Q; ++r) row.push_back(cfg.attenuation(n, k, m, r));
      std::sort(row.begin(), row.end());
      for (int r = 0; r < d.Q; ++r) {
        std::vector<double> key = row;
        key.insert(key.begin(), cfg.attenuation(n, k, n, r));
        auto [it, inserted] = index.try_emplace(std::move(key), classes.size());
        if (inserted) classes.emplace_back();
        classes[it->second].push_back(Triple{n, k, r});
      }
    }
  }
  return classes;
}

}  // namespace

BetaTable calibrate_beta(const NetworkConfig& config, std::uint64_t samples_per_user,
                         double target, const CalibrationOptions& options) {
  config.validate();
  const Dimensions& d = config.dims;
  if (std::isnan(target) || target < 0.0 || target >= 1.0)
    throw std::domain_error("calibration target must be in [0, 1)");

  const auto classes = group_users(config, options.pool_identical);
  const std::size_t per_triple = static_cast<std::size_t>(d.Nt) * d.Nr;
  std::size_t smallest = classes.front().size();
  for (const auto& c : classes) smallest = std::min(smallest, c.size());
  const std::uint64_t draws =
      std::max<std::uint64_t>(1, (samples_per_user + per_triple * smallest - 1) /
                                     (per_triple * smallest));

  const std::uint64_t required = 10ull * static_cast<std::uint64_t>(d.K) * d.Nr;
  std::vector<Triple> offenders;
  for (const auto& c : classes)
    if (draws * per_triple * c.size() < required)
      offenders.insert(offenders.end(), c.begin(), c.end());
  if (!offenders.empty())
    throw CalibrationError("calibration needs at least " + std::to_string(required) +
                               " samples per user CDF (10 * K * N_r)",
                           std::move(offenders));

  // slot of (n, k, r) inside its class
  std::vector<std::size_t> class_of(static_cast<std::size_t>(d.M) * d.K * d.Q);
  std::vector<std::size_t> member_of(class_of.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t j = 0; j < classes[c].size(); ++j) {
      const auto [n, k, r] = classes[c][j];
      const std::size_t flat = (static_cast<std::size_t>(n) * d.K + k) * d.Q + r;
      class_of[flat] = c;
      member_of[flat] = j;
    }

  std::vector<std::vector<double>> samples(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    samples[c].resize(draws * per_triple * classes[c].size());

  const RngPolicy policy(config.seed);
  detail::parallel_for(draws, options.workers, [&](std::size_t draw) {
    Stream stream = policy.stream(StreamDomain::calibration, draw);
    const SinrTable sinr = compute_sinr_table(config, sample_channels(d, stream));
    for (int n = 0; n < d.M; ++n)
      for (int k = 0; k < d.K; ++k)
        for (int r = 0; r < d.Q; ++r) {
          const std::size_t flat = (static_cast<std::size_t>(n) * d.K + k) * d.Q + r;
          const std::size_t c = class_of[flat];
          double* out = samples[c].data() + (draw * classes[c].size() + member_of[flat]) * per_triple;
          for (int i = 0; i < d.Nr; ++i)
            for (int l = 0; l < d.Nt; ++l) *out++ = sinr.at(n, k, i, r, l);
        }
  });

  BetaTable table(d.M, d.K, d.Q, target, CalibrationMethod::empirical);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const EmpiricalCdf cdf(std::move(samples[c]));
    samples[c] = {};
    const double beta = bisect_quantile([&](double x) { return cdf(x); }, target);
    for (const auto& [n, k, r] : classes[c]) table.at(n, k, r) = beta;
  }
  return table;
}

BetaTable calibrate_beta(const NetworkConfig& config, std::uint64_t samples_per_user,
                         const CalibrationOptions& options) {
  return calibrate_beta(config, samples_per_user, quantile_target(config.dims), options);
}

double analytic_beta_homogeneous(const NetworkConfig& config, double target) {
  if (!config.attenuation.is_homogeneous())
    throw UnsupportedError("closed-form calibration requires a homogeneous attenuation profile");
  const ClosedFormCdf cdf = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, config, 0);
  return bisect_quantile([&](double x) { return cdf(x); }, target);
}

BetaTable calibrate_closed_form(const NetworkConfig& config) {
  config.validate();
  const double target = quantile_target(config.dims);
  const double beta = analytic_beta_homogeneous(config, target);
  BetaTable table(config.dims.M, config.dims.K, config.dims.Q, target,
                  CalibrationMethod::closed_form);
  for (int n = 0; n < config.dims.M; ++n)
    for (int k = 0; k < config.dims.K; ++k)
      for (int r = 0; r < config.dims.Q; ++r) table.at(n, k, r) = beta;
  return table;
}

void write_beta_csv(std::ostream& out, const BetaTable& table) {
  out << "n,k,r,beta\n";
  for (int n = 0; n < table.M(); ++n)
    for (int k = 0; k < table.K(); ++k)
      for (int r = 0; r < table.Q(); ++r)
        out << n << ',' << k << ',' << r << ',' << detail::format_double(table.at(n, k, r))
            << '\n';
}

BetaTable read_beta_csv(std::istream& in, const Dimensions& dims, double target,
                        CalibrationMethod method) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("beta CSV: empty input");
  const auto header = detail::split_csv_line(line);
  if (header != std::vector<std::string>{"n", "k", "r", "beta"})
    throw IoError("beta CSV: expected header n,k,r,beta");

  BetaTable table(dims.M, dims.K, dims.Q, target, method);
  std::vector<char> seen(table.values().size(), 0);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 4)
      throw IoError("beta CSV: row " + std::to_string(row) + " needs 4 fields");
    long long n = 0, k = 0, r = 0;
    double beta = 0.0;
    try {
      n = detail::parse_integer(f[0]);
      k = detail::parse_integer(f[1]);
      r = detail::parse_integer(f[2]);
      beta = detail::parse_double(f[3]);
    } catch (const std::invalid_argument& e) {
      throw IoError("beta CSV: row " + std::to_string(row) + ": " + e.what());
    }
    if (n < 0 || n >= dims.M || k < 0 || k >= dims.K || r < 0 || r >= dims.Q)
      throw IoError("beta CSV: row " + std::to_string(row) + " index out of range");
    if (!(beta >= 0.0) || !std::isfinite(beta))
      throw IoError("beta CSV: row " + std::to_string(row) + " has invalid beta");
    const std::size_t flat = (static_cast<std::size_t>(n) * dims.K + k) * dims.Q + r;
    if (seen[flat]++) throw IoError("beta CSV: duplicate entry at row " + std::to_string(row));
    table.at(static_cast<int>(n), static_cast<int>(k), static_cast<int>(r)) = beta;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw IoError("beta CSV: missing entries for the configured dimensions");
  return table;
}

}  // namespace rbsched
