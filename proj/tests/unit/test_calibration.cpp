// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "rbsched/calibration.hpp"
#include "rbsched/sinr.hpp"

namespace rbsched {
namespace {

TEST(EmpiricalCdf, StepConvention) {
  const EmpiricalCdf f({4.0, 1.0, 3.0, 2.0});
  EXPECT_EQ(f(0.5), 0.0);
  EXPECT_EQ(f(1.0), 0.25);
  EXPECT_EQ(f(2.5), 0.5);
  EXPECT_EQ(f(9.0), 1.0);
  EXPECT_EQ(f.order_statistic_quantile(0.5), 2.0);
  EXPECT_EQ(f.order_statistic_quantile(0.51), 3.0);
  EXPECT_EQ(f.order_statistic_quantile(1.0), 4.0);
  EXPECT_THROW(f.order_statistic_quantile(0.0), std::domain_error);
}

TEST(Bisection, ExponentialQuantile) {
  // Single beam, rho = 10: F(x) = 1 - exp(-x / 10), so the 0.99 quantile is 10 ln 100.
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 100}, 10.0);
  EXPECT_NEAR(analytic_beta_homogeneous(cfg, 0.99), 10.0 * std::log(100.0), 1e-6);
  EXPECT_NEAR(calibrate_closed_form(cfg).at(0, 50, 0), 46.0517, 1e-3);
}

TEST(Bisection, ZeroTargetIsZero) {
  EXPECT_EQ(bisect_quantile([](double x) { return 1.0 - std::exp(-x); }, 0.0), 0.0);
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 1}, 10.0);
  EXPECT_EQ(calibrate_closed_form(cfg).at(0, 0, 0), 0.0);
}

TEST(Bisection, IndependentOfInitialBracket) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 100}, 10.0);
  const auto f = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, cfg, 0);
  const auto cdf = [&](double x) { return f(x); };
  const double a = bisect_quantile(cdf, 0.99, 1.0);
  const double b = bisect_quantile(cdf, 0.99, 1000.0);
  const double c = bisect_quantile(cdf, 0.99, 1e-3);
  EXPECT_NEAR(a, b, 1e-6);
  EXPECT_NEAR(a, c, 1e-6);
}

TEST(Bisection, ThresholdGrowsWithK) {
  double previous = 0.0;
  for (int K : {10, 20, 50, 100, 1000, 10000}) {
    const auto cfg = NetworkConfig::homogeneous({3, 2, 2, 1, K}, 10.0);
    const double beta = calibrate_closed_form(cfg).at(0, 0, 0);
    EXPECT_GT(beta, previous) << "K=" << K;
    previous = beta;
  }
}

TEST(Calibration, EmpiricalMatchesExponentialOracle) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 100}, 10.0, 5);
  const auto table = calibrate_beta(cfg, 1000000);
  const double oracle = 10.0 * std::log(100.0);
  EXPECT_NEAR(table.at(0, 0, 0), oracle, 0.05 * oracle);
  // The fitted threshold sits at the target quantile of the true CDF.
  const double achieved = 1.0 - std::exp(-table.at(0, 0, 0) / 10.0);
  EXPECT_NEAR(achieved, 0.99, 1.0 / std::sqrt(1e6));
}

TEST(Calibration, EmpiricalMatchesClosedFormWithInterference) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 100}, 10.0, 6);
  const auto table = calibrate_beta(cfg, 1000000);
  const double analytic = calibrate_closed_form(cfg).at(0, 0, 0);
  EXPECT_NEAR(table.min(), analytic, 0.03 * analytic);
  EXPECT_NEAR(table.max(), analytic, 0.03 * analytic);
  EXPECT_EQ(table.method(), CalibrationMethod::empirical);
}

TEST(Calibration, PooledAndUnpooledAgree) {
  const auto cfg = NetworkConfig::homogeneous({1, 2, 2, 1, 20}, 10.0, 7);
  const auto pooled = calibrate_beta(cfg, 40000);
  const auto solo = calibrate_beta(cfg, 40000, CalibrationOptions{false, 1});
  const double analytic = calibrate_closed_form(cfg).at(0, 0, 0);
  EXPECT_NEAR(pooled.mean(), analytic, 0.03 * analytic);
  EXPECT_NEAR(solo.mean(), analytic, 0.03 * analytic);
  EXPECT_GT(solo.max() - solo.min(), 0.0);
}

TEST(Calibration, WorkerCountDoesNotChangeResult) {
  const auto cfg = NetworkConfig::homogeneous({2, 1, 2, 2, 10}, 10.0, 8);
  const auto a = calibrate_beta(cfg, 20000, CalibrationOptions{false, 1});
  const auto b = calibrate_beta(cfg, 20000, CalibrationOptions{false, 3});
  EXPECT_EQ(a.values(), b.values());
}

TEST(Calibration, TooFewSamplesNamesOffenders) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 100}, 10.0);
  try {
    calibrate_beta(cfg, 10, CalibrationOptions{false, 1});
    FAIL() << "expected CalibrationError";
  } catch (const CalibrationError& e) {
    EXPECT_EQ(e.offenders().size(), 100u);
    EXPECT_EQ(e.offenders().front(), (std::array<int, 3>{0, 0, 0}));
  }
}

TEST(Calibration, ClosedFormRequiresHomogeneity) {
  const Dimensions d{1, 2, 2, 1, 5};
  const auto g = AttenuationProfile::log_uniform(1, 5, 2, 0.0, 10.0, Granularity::per_user, 1);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 1);
  EXPECT_THROW(calibrate_closed_form(cfg), UnsupportedError);
}

TEST(Calibration, HeterogeneousUsersGetDistinctThresholds) {
  const Dimensions d{1, 2, 2, 1, 10};
  const auto g = AttenuationProfile::log_uniform(1, 10, 2, 0.0, 20.0, Granularity::per_user, 2);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 3);
  const auto t = calibrate_beta(cfg, 20000, CalibrationOptions{false, 1});
  // Stronger users need a higher threshold to keep the same exceedance rate.
  int strongest = 0, weakest = 0;
  for (int k = 1; k < 10; ++k) {
    if (g(0, k, 0, 0) > g(0, strongest, 0, 0)) strongest = k;
    if (g(0, k, 0, 0) < g(0, weakest, 0, 0)) weakest = k;
  }
  EXPECT_GT(t.at(0, strongest, 0), t.at(0, weakest, 0));
}

TEST(BetaCsv, RoundTrip) {
  const Dimensions d{2, 2, 1, 1, 3};
  BetaTable t(2, 3, 2, 0.9, CalibrationMethod::empirical);
  for (std::size_t i = 0; i < t.values().size(); ++i)
    t.at(static_cast<int>(i / 6), static_cast<int>(i / 2 % 3), static_cast<int>(i % 2)) =
        0.1 + 1.0 / (3.0 + static_cast<double>(i));
  std::stringstream io;
  write_beta_csv(io, t);
  const auto back = read_beta_csv(io, d, 0.9, CalibrationMethod::empirical);
  EXPECT_EQ(back.values(), t.values());
}

TEST(BetaCsv, RejectsMalformedInput) {
  const Dimensions d{1, 1, 1, 1, 2};
  auto read = [&](const std::string& text) {
    std::istringstream in(text);
    return read_beta_csv(in, d, 0.5, CalibrationMethod::empirical);
  };
  EXPECT_THROW(read(""), IoError);
  EXPECT_THROW(read("a,b,c,d\n"), IoError);
  EXPECT_THROW(read("n,k,r,beta\n0,0,0,1.5\n"), IoError);
  EXPECT_THROW(read("n,k,r,beta\n0,0,0,1.5\n0,0,0,1.5\n0,1,0,1\n"), IoError);
  EXPECT_THROW(read("n,k,r,beta\n0,0,0,x\n0,1,0,1\n"), IoError);
  EXPECT_THROW(read("n,k,r,beta\n0,0,0,-1\n0,1,0,1\n"), IoError);
  EXPECT_NO_THROW(read("n,k,r,beta\n0,0,0,1.5\n0,1,0,1\n"));
}

}  // namespace
}  // namespace rbsched
