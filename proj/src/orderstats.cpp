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
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "rbsched/orderstats.hpp"

namespace rbsched {

double MixtureWeights::total() const noexcept {
  double s = 0.0;
  for (double v : q) s += v;
  return s;
}

double MixtureWeights::first_moment() const noexcept {
  double s = 0.0;
  for (std::size_t j = 1; j < q.size(); ++j) s += static_cast<double>(j) * q[j];
  return s;
}

double MixtureWeights::served_mass() const noexcept {
  double s = 0.0;
  for (std::size_t j = 1; j < q.size(); ++j) s += q[j];
  return s;
}

MixtureWeights MixtureWeights::point_mass(int K, int j) {
  if (K < 1 || j < 1 || j > K) throw std::out_of_range("point mass rank must be in [1, K]");
  MixtureWeights w;
  w.q.assign(static_cast<std::size_t>(K) + 1, 0.0);
  w.q[j] = 1.0;
  return w;
}

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(K, i) u^(K - i) (1 - u)^i for 0 < u < 1.
double binomial_term(double log_u, double log_1mu, int K, int i) {
  return std::exp(log_choose(K, i) + (K - i) * log_u + i * log_1mu);
}

}  // namespace

MixtureWeights binomial_candidate_weights(int K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const double p = 1.0 / K;
  std::vector<double> pmf(static_cast<std::size_t>(K) + 1);
  for (int b = 0; b <= K; ++b) {
    if (K == 1) {
      pmf[b] = b == 1 ? 1.0 : 0.0;
      continue;
    }
    pmf[b] = std::exp(log_choose(K, b) + b * std::log(p) + (K - b) * std::log1p(-p));
  }
  MixtureWeights w;
  w.q.assign(static_cast<std::size_t>(K) + 1, 0.0);
  double tail = 0.0;
  for (int j = K; j >= 1; --j) {
    tail += pmf[j] / j;
    w.q[j] = tail;
  }
  w.q[0] = pmf[0];
  return w;
}

double order_stat_cdf(double u, int K, int j) {
  if (K < 1 || j < 1 || j > K) throw std::out_of_range("rank j must be in [1, K]");
  if (std::isnan(u) || u < 0.0 || u > 1.0) throw std::domain_error("u must be in [0, 1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  // Binomial tail P(Bin(K, u) >= K - j + 1) as a regularized incomplete beta;
  // summing the terms directly loses monotonicity to rounding near u = 1.
  return boost::math::ibeta(static_cast<double>(K - j + 1), static_cast<double>(j), u);
}

double mixture_cdf(const MixtureWeights& weights, double u, bool conditional) {
  const int K = weights.K();
  if (K < 1) throw std::invalid_argument("weights need K >= 1");
  if (std::isnan(u) || u < 0.0 || u > 1.0) throw std::domain_error("u must be in [0, 1]");
  const double served = weights.served_mass();
  double value = 0.0;
  if (u == 1.0) {
    value = served;
  } else if (u > 0.0) {
    // sum_j q_j sum_{i<j} t_i  ==  sum_i t_i * (q_{i+1} + ... + q_K)
    const double lu = std::log(u);
    const double l1mu = std::log1p(-u);
    double above = served;  // sum of q_j for j > i, starting at i = 0
    for (int i = 0; i < K; ++i) {
      value += binomial_term(lu, l1mu, K, i) * above;
      above -= weights.q[i + 1];
      if (above <= 0.0) break;
    }
  }
  if (conditional) {
    if (!(served > 0.0)) throw std::domain_error("weights carry no served mass");
    value /= served;
    return std::clamp(value, 0.0, 1.0);
  }
  return std::clamp(value, 0.0, served);
}

double f_monotone(double x, int j, int K) {
  if (K < 1 || j < 0 || j > K - 1) throw std::out_of_range("f(x, j) needs 0 <= j <= K - 1");
  return order_stat_cdf(x, K, j + 1);
}

double scaling_integral(double a, const MixtureWeights& weights, std::uint64_t samples,
                        Stream& stream) {
  if (!(a > 0.0)) throw std::domain_error("scale a must be positive");
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  const int K = weights.K();
  const double served = weights.served_mass();
  if (K < 1 || !(served > 0.0)) return 0.0;

  std::discrete_distribution<int> rank(weights.q.begin() + 1, weights.q.end());
  double sum = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const int j = rank(stream) + 1;
    // j-th largest of K unit exponentials is -ln of the j-th smallest of K
    // uniforms, a Beta(j, K - j + 1) variate.
    std::gamma_distribution<double> above(static_cast<double>(K - j + 1), 1.0);
    std::gamma_distribution<double> below(static_cast<double>(j), 1.0);
    const double ga = above(stream);
    const double gb = below(stream);
    const double x = std::log1p(ga / gb);
    sum += std::log2(1.0 + a * x);
  }
  return served * sum / static_cast<double>(samples);
}

double scaling_integral_quadrature(double a, const MixtureWeights& weights, int grid_points) {
  if (!(a > 0.0)) throw std::domain_error("scale a must be positive");
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  const int K = weights.K();
  const double served = weights.served_mass();
  const double x_max = std::log(static_cast<double>(K)) + 40.0;
  const double h = x_max / (grid_points - 1);
  // integration by parts: int log2(1 + a x) dW = int (W(inf) - W(x)) a / ((1 + a x) ln 2) dx
  auto integrand = [&](double x) {
    const double u = -std::expm1(-x);
    return (served - mixture_cdf(weights, u)) * a / ((1.0 + a * x) * std::numbers::ln2);
  };
  double sum = 0.5 * (integrand(0.0) + integrand(x_max));
  for (int g = 1; g < grid_points - 1; ++g) sum += integrand(g * h);
  return sum * h;
}

BoundConstants bound_constants(const NetworkConfig& config, int n) {
  const AttenuationExtremes e = config.attenuation.extremes(n);
  const Dimensions& d = config.dims;
  const double A = d.beams_per_cell() *
                   std::log2((d.total_beams() - 1) * config.rho * e.zeta_max * e.eta_min + 1.0);
  return {A, config.rho * e.eta_min, config.rho * e.eta_max};
}

RateBounds rate_bounds(const NetworkConfig& config, int n, const MixtureWeights& weights,
                       std::uint64_t samples, Stream& stream) {
  const BoundConstants c = bound_constants(config, n);
  const int beams = config.dims.beams_per_cell();
  // Common random numbers for both sides keep lower <= upper exactly.
  Stream twin = stream;
  const double lower = beams * scaling_integral(c.rho_eta_min, weights, samples, twin);
  const double upper = beams * scaling_integral(c.rho_eta_max, weights, samples, stream);
  return {lower - c.A, upper, c};
}

int verify_ordered_bounds(const SinrTable& lower, const SinrTable& sinr, const SinrTable& upper,
                          int n, int r, int l, int i) {
  const Dimensions& d = sinr.dims();
  if (!(lower.dims() == d) || !(upper.dims() == d))
    throw std::invalid_argument("bound tables do not match the SINR table");
  std::vector<double> s(d.K), x(d.K), t(d.K);
  for (int k = 0; k < d.K; ++k) {
    s[k] = lower.at(n, k, i, r, l);
    x[k] = sinr.at(n, k, i, r, l);
    t[k] = upper.at(n, k, i, r, l);
  }
  const auto desc = std::greater<double>();
  std::sort(s.begin(), s.end(), desc);
  std::sort(x.begin(), x.end(), desc);
  std::sort(t.begin(), t.end(), desc);
  constexpr double slack = 1e-12;
  int violations = 0;
  for (int j = 0; j < d.K; ++j) {
    if (s[j] > x[j] * (1.0 + slack)) ++violations;
    if (x[j] > t[j] * (1.0 + slack)) ++violations;
  }
  return violations;
}

MeanBracket exponential_max_mean_bounds(int K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const double base = std::log(static_cast<double>(K)) + std::numbers::egamma;
  return {base + 1.0 / (2.0 * (K + 1.0)), base + 1.0 / (2.0 * K)};
}

double exponential_max_mean_estimate(int K, std::uint64_t draws, Stream& stream,
                                     bool stratified) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (draws == 0) throw std::invalid_argument("draws must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double below_one = std::nextafter(1.0, 0.0);
  double sum = 0.0;
  for (std::uint64_t s = 0; s < draws; ++s) {
    double u = stratified ? (static_cast<double>(s) + unit(stream)) / static_cast<double>(draws)
                          : unit(stream);
    u = std::min(u, below_one);
    // inverse of (1 - e^-x)^K
    sum += -std::log(-std::expm1(std::log(u) / K));
  }
  return sum / static_cast<double>(draws);
}

}  // namespace rbsched
