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
#include <vector>

#include "rbsched/config.hpp"
#include "rbsched/rng.hpp"
#include "rbsched/sinr.hpp"

namespace rbsched {

/// Mixture weights over the rank of the served user. q[0] is the probability
/// of an empty candidate set; q[j] (j >= 1) weights the j-th largest of K.
struct MixtureWeights {
  std::vector<double> q;  // size K + 1

  int K() const noexcept { return static_cast<int>(q.size()) - 1; }
  double total() const noexcept;
  /// sum_j j * q[j]
  double first_moment() const noexcept;
  /// 1 - q[0]: mass carried by ranks j >= 1.
  double served_mass() const noexcept;

  static MixtureWeights point_mass(int K, int j);
};

/// Weights induced by a Binomial(K, 1/K) candidate-set size:
/// q[j] = sum_{b >= j} P(b) / b for j >= 1, q[0] = P(0).
MixtureWeights binomial_candidate_weights(int K);

/// CDF of the j-th largest of K i.i.d. draws, given the parent CDF value u:
///   sum_{i < j} C(K, i) u^(K - i) (1 - u)^i
/// Throws std::out_of_range unless 1 <= j <= K.
double order_stat_cdf(double u, int K, int j);

/// sum_{j >= 1} q[j] * order_stat_cdf(u, K, j). With `conditional` the result
/// is divided by the served mass, giving a proper CDF over ranks j >= 1.
double mixture_cdf(const MixtureWeights& weights, double u, bool conditional = false);

/// sum_{i = 0..j} C(K, i) x^(K - i) (1 - x)^i, increasing in x for 0 <= j <= K - 1.
double f_monotone(double x, int j, int K);

/// Monte-Carlo estimate of  integral log2(1 + a x) dW(x)  where
/// W = sum_{j >= 1} q[j] W_(j) and W_(j) is the j-th largest of K unit
/// exponentials. The q[0] mass contributes nothing.
double scaling_integral(double a, const MixtureWeights& weights, std::uint64_t samples,
                        Stream& stream);

/// The same integral by trapezoid quadrature on the analytic mixture CDF
/// (integration by parts), `grid_points` nodes.
double scaling_integral_quadrature(double a, const MixtureWeights& weights,
                                   int grid_points = 10000);

struct BoundConstants {
  double A;            // Q N_t log2((M Q N_t - 1) rho zeta_max eta_min + 1)
  double rho_eta_min;  // rho * eta_min
  double rho_eta_max;  // rho * eta_max
};
BoundConstants bound_constants(const NetworkConfig& config, int n);

struct RateBounds {
  double lower;
  double upper;
  BoundConstants constants;
};

/// Numeric lower and upper bounds on the order-statistic rate of super-cell n:
///   Q N_t I(rho eta_min) - A  <=  R  <=  Q N_t I(rho eta_max)
/// with I(a) = scaling_integral(a, weights).
RateBounds rate_bounds(const NetworkConfig& config, int n, const MixtureWeights& weights,
                       std::uint64_t samples, Stream& stream);

/// Counts index-wise violations of S_(j) <= SINR_(j) <= T_(j) after sorting
/// the K values of (n, i, r, l) in descending order.
int verify_ordered_bounds(const SinrTable& lower, const SinrTable& sinr, const SinrTable& upper,
                          int n, int r, int l, int i = 0);

struct MeanBracket {
  double lower;
  double upper;
};

/// ln K + gamma_E + 1/(2(K+1))  <=  E[max of K unit exponentials]  <=  ln K + gamma_E + 1/(2K)
MeanBracket exponential_max_mean_bounds(int K);

/// Mean of `draws` samples of the maximum of K unit exponentials. Stratified
/// inverse-CDF sampling (one jittered uniform per stratum) when `stratified`,
/// otherwise plain independent draws.
double exponential_max_mean_estimate(int K, std::uint64_t draws, Stream& stream,
                                     bool stratified = true);

}  // namespace rbsched
