// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rbsched/orderstats.hpp"

namespace rbsched {
namespace {

// E[log2(1 + a X)] for X the maximum of K unit exponentials, by composite
// Simpson on the density K (1 - e^-x)^(K-1) e^-x.
double max_exponential_log_rate(double a, int K) {
  const double hi = std::log(static_cast<double>(K)) + 40.0;
  const int n = 200000;
  const double h = hi / n;
  auto f = [&](double x) {
    const double dens = K * std::exp((K - 1) * std::log1p(-std::exp(-x)) - x);
    return std::log2(1.0 + a * x) * (x > 0.0 ? dens : (K == 1 ? 1.0 : 0.0));
  };
  double s = f(0.0) + f(hi);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

TEST(OrderStat, ExtremeRanks) {
  for (double u : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(order_stat_cdf(u, 5, 1), std::pow(u, 5), 1e-14);
    EXPECT_NEAR(order_stat_cdf(u, 5, 5), 1.0 - std::pow(1.0 - u, 5), 1e-14);
  }
  EXPECT_NEAR(order_stat_cdf(0.5, 3, 2), 0.5, 1e-14);
  EXPECT_EQ(order_stat_cdf(0.0, 4, 2), 0.0);
  EXPECT_EQ(order_stat_cdf(1.0, 4, 2), 1.0);
}

TEST(OrderStat, RejectsBadRank) {
  EXPECT_THROW(order_stat_cdf(0.5, 3, 0), std::out_of_range);
  EXPECT_THROW(order_stat_cdf(0.5, 3, 4), std::out_of_range);
  EXPECT_THROW(order_stat_cdf(1.5, 3, 1), std::domain_error);
}

TEST(OrderStat, LowerRanksAreStochasticallySmaller) {
  for (double u = 0.05; u < 1.0; u += 0.05)
    for (int j = 1; j < 20; ++j) EXPECT_LE(order_stat_cdf(u, 20, j), order_stat_cdf(u, 20, j + 1));
}

TEST(Mixture, WeightsSumToOne) {
  for (int K : {1, 2, 10, 100, 1000}) {
    const auto w = binomial_candidate_weights(K);
    EXPECT_NEAR(w.total(), 1.0, 1e-12) << "K=" << K;
    EXPECT_LE(w.first_moment(), 1.0 + 1e-12);
  }
  const auto one = binomial_candidate_weights(1);
  EXPECT_EQ(one.q[1], 1.0);
  EXPECT_EQ(one.q[0], 0.0);
}

TEST(Mixture, FirstMomentMatchesBinomialIdentity) {
  // sum_j j q_j = sum_{b >= 1} P(b) (b + 1) / 2 = 1 - P(0) / 2.
  for (int K : {10, 100, 1000}) {
    const double p0 = std::pow(1.0 - 1.0 / K, K);
    EXPECT_NEAR(binomial_candidate_weights(K).first_moment(), 1.0 - p0 / 2.0, 1e-10);
  }
  EXPECT_NEAR(binomial_candidate_weights(100).first_moment(), 0.81698, 5e-6);
}

TEST(Mixture, PointMassReducesToOrderStatistic) {
  const auto w = MixtureWeights::point_mass(7, 1);
  for (double u : {0.2, 0.6, 0.95}) EXPECT_NEAR(mixture_cdf(w, u), std::pow(u, 7), 1e-12);
  const auto last = MixtureWeights::point_mass(7, 7);
  EXPECT_NEAR(mixture_cdf(last, 0.3), 1.0 - std::pow(0.7, 7), 1e-12);
}

TEST(Mixture, ProperCdf) {
  const auto w = binomial_candidate_weights(50);
  double prev = 0.0;
  for (double u = 0.0; u <= 1.0; u += 0.001) {
    const double v = mixture_cdf(w, u);
    EXPECT_GE(v, prev - 1e-15);
    EXPECT_LE(v, w.served_mass());
    prev = v;
  }
  EXPECT_NEAR(mixture_cdf(w, 1.0, true), 1.0, 1e-12);
  EXPECT_EQ(mixture_cdf(w, 0.0), 0.0);
}

TEST(FMonotone, EndpointsAndOrdering) {
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(f_monotone(0.0, j, 5), 0.0);
    EXPECT_EQ(f_monotone(1.0, j, 5), 1.0);
  }
  EXPECT_LT(f_monotone(0.6, 2, 5), f_monotone(0.7, 2, 5));
  EXPECT_THROW(f_monotone(0.5, 5, 5), std::out_of_range);
}

TEST(FMonotone, IncreasingOnRandomPairs) {
  Stream s(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> kdist(1, 200);
  for (int t = 0; t < 2000; ++t) {
    const int K = kdist(s);
    const int j = std::uniform_int_distribution<int>(0, K - 1)(s);
    double a = unit(s), b = unit(s);
    if (a > b) std::swap(a, b);
    EXPECT_LE(f_monotone(a, j, K), f_monotone(b, j, K)) << "K=" << K << " j=" << j;
  }
}

TEST(ScalingIntegral, MaxOfExponentialsMatchesDirectIntegration) {
  Stream s(5);
  const double oracle = max_exponential_log_rate(1.0, 1000);
  const double mc = scaling_integral(1.0, MixtureWeights::point_mass(1000, 1), 1000000, s);
  EXPECT_NEAR(mc, oracle, 0.05);
  EXPECT_NEAR(oracle, 3.085, 0.05);
}

TEST(ScalingIntegral, DoublingScaleAddsOneBitAtHighSnr) {
  Stream s1(6), s2(6);
  const auto w = MixtureWeights::point_mass(1000, 1);
  const double at10 = scaling_integral(10.0, w, 1000000, s1);
  const double at20 = scaling_integral(20.0, w, 1000000, s2);
  EXPECT_NEAR(at20 - at10, 1.0, 0.05);
}

TEST(ScalingIntegral, QuadratureAgreesWithMonteCarlo) {
  for (const auto& w : {binomial_candidate_weights(50), MixtureWeights::point_mass(50, 1)}) {
    Stream s(8);
    const double mc = scaling_integral(10.0, w, 1000000, s);
    const double quad = scaling_integral_quadrature(10.0, w, 20000);
    EXPECT_NEAR(quad, mc, 0.01 * mc);
  }
}

TEST(ScalingIntegral, EmptyMassContributesNothing) {
  const auto w = binomial_candidate_weights(10);
  Stream s(9);
  const double served_only = scaling_integral(1.0, w, 200000, s);
  auto conditional = w;
  conditional.q[0] = 0.0;
  for (std::size_t j = 1; j < conditional.q.size(); ++j) conditional.q[j] /= w.served_mass();
  Stream s2(9);
  const double full = scaling_integral(1.0, conditional, 200000, s2);
  EXPECT_NEAR(served_only, w.served_mass() * full, 1e-9);
}

TEST(RateBounds, HomogeneousGapIsConstant) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 100}, 10.0);
  Stream s(10);
  const auto b = rate_bounds(cfg, 0, binomial_candidate_weights(100), 20000, s);
  EXPECT_NEAR(b.upper - b.lower, b.constants.A, 1e-9);
  EXPECT_NEAR(b.constants.A, 4.0 * std::log2(7.0 * 10.0 + 1.0), 1e-12);
}

TEST(RateBounds, SingleBeamHasNoInterferencePenalty) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 10}, 10.0);
  EXPECT_EQ(bound_constants(cfg, 0).A, 0.0);
}

TEST(OrderedBounds, HoldOnSimulatedNetworks) {
  const Dimensions d{2, 2, 2, 1, 30};
  const auto g = AttenuationProfile::log_uniform(2, 30, 2, -10.0, 10.0, Granularity::per_link, 4);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 11);
  for (int t = 0; t < 100; ++t) {
    const auto all = compute_sinr_with_bounds(cfg, sample_channels(cfg, t));
    for (int n = 0; n < 2; ++n)
      for (int r = 0; r < 2; ++r)
        for (int l = 0; l < 2; ++l)
          ASSERT_EQ(verify_ordered_bounds(all.bounds.lower, all.sinr, all.bounds.upper, n, r, l), 0);
  }
}

TEST(OrderedBounds, SwappedTablesAreCaught) {
  const Dimensions d{1, 2, 2, 1, 30};
  const auto g = AttenuationProfile::log_uniform(1, 30, 2, -10.0, 10.0, Granularity::per_link, 4);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 12);
  const auto all = compute_sinr_with_bounds(cfg, sample_channels(cfg, 0));
  EXPECT_GT(verify_ordered_bounds(all.bounds.upper, all.sinr, all.bounds.lower, 0, 0, 0), 0);
}

TEST(ExponentialMax, BracketContainsEstimate) {
  for (int K : {1, 10, 100, 1000}) {
    const auto b = exponential_max_mean_bounds(K);
    Stream s(13);
    const double est = exponential_max_mean_estimate(K, 1000000, s);
    EXPECT_GE(est, b.lower - 1e-4) << "K=" << K;
    EXPECT_LE(est, b.upper + 1e-4) << "K=" << K;
  }
  const auto one = exponential_max_mean_bounds(1);
  EXPECT_LE(one.lower, 1.0);
  EXPECT_GE(one.upper, 1.0);
  EXPECT_LT(exponential_max_mean_bounds(1000).upper - exponential_max_mean_bounds(1000).lower,
            5e-4);
}

TEST(ExponentialMax, TailConditionalMeanGrowsWithThreshold) {
  // E[log(1 + X) | X >= b] is nondecreasing in b for a unit exponential.
  Stream s(14);
  std::exponential_distribution<double> e(1.0);
  const double lo = 1.0, hi = 3.0;
  const int n = 100000;
  double at_lo = 0.0, at_hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = e(s);  // memoryless: X | X >= b  ~  b + X
    at_lo += std::log1p(lo + x);
    at_hi += std::log1p(hi + x);
  }
  EXPECT_GE(at_hi / n, at_lo / n);
}

}  // namespace
}  // namespace rbsched
