// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rbsched/stats.hpp"

namespace rbsched {
namespace {

TEST(MeanSe, KnownValues) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto m = mean_se(v);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-14);
  EXPECT_EQ(mean_se(std::vector<double>{7.0}).se, 0.0);
}

TEST(Ks, StatisticOfTinySample) {
  // Sample {0.5} against U(0, 1): the step jumps from 0 to 1 at 0.5.
  EXPECT_NEAR(ks_statistic({0.5}, [](double x) { return x; }), 0.5, 1e-15);
  EXPECT_NEAR(ks_statistic({0.1, 0.9}, [](double x) { return x; }), 0.4, 1e-15);
}

TEST(Ks, PValueTailValues) {
  // Kolmogorov distribution: P(sqrt(n) D > 1.358) ~ 0.05 for large n.
  EXPECT_NEAR(ks_p_value(1.358 / std::sqrt(1e6), 1000000), 0.05, 0.002);
  EXPECT_NEAR(ks_p_value(1.628 / std::sqrt(1e6), 1000000), 0.01, 0.001);
  EXPECT_GT(ks_p_value(1e-5, 1000), 0.99);
  EXPECT_LT(ks_p_value(0.5, 1000), 1e-12);
}

TEST(Ks, UniformSampleIsAccepted) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(50000);
  for (auto& v : x) v = u(g);
  const double d = ks_statistic(x, [](double t) { return t; });
  EXPECT_GT(ks_p_value(d, x.size()), 0.001);
  EXPECT_LT(ks_p_value(ks_statistic(x, [](double t) { return t * t; }), x.size()), 1e-6);
}

TEST(ChiSquare, SurvivalKnownValues) {
  EXPECT_NEAR(chi_square_survival(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(chi_square_survival(18.307038053275146, 10), 0.05, 1e-9);
  EXPECT_EQ(chi_square_survival(0.0, 3), 1.0);
}

TEST(ChiSquare, UniformCounts) {
  const std::vector<std::uint64_t> even{100, 100, 100};
  EXPECT_EQ(chi_square_uniform(even).statistic, 0.0);
  EXPECT_EQ(chi_square_uniform(even).dof, 2);
  const std::vector<std::uint64_t> skew{150, 100, 50};
  EXPECT_DOUBLE_EQ(chi_square_uniform(skew).statistic, 50.0);
  EXPECT_LT(chi_square_uniform(skew).p_value, 1e-10);
}

}  // namespace
}  // namespace rbsched
