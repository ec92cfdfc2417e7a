// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rbsched/sinr.hpp"
#include "rbsched/stats.hpp"

namespace rbsched {
namespace {

TEST(Sinr, SingleLinkNoInterference) {
  const Dimensions d{1, 1, 1, 1, 1};
  const auto cfg = NetworkConfig::homogeneous(d, 10.0);
  ChannelRealization ch(d, {Complex(1.0, 0.0)}, {Eigen::MatrixXcd::Identity(1, 1)});
  EXPECT_NEAR(compute_sinr_table(cfg, ch).at(0, 0, 0, 0, 0), 10.0, 1e-12);
}

TEST(Sinr, TwoBeamsOneInterferer) {
  const Dimensions d{1, 1, 2, 1, 1};
  const auto cfg = NetworkConfig::homogeneous(d, 10.0);
  ChannelRealization ch(d, {Complex(1.0, 0.0), Complex(1.0, 0.0)},
                        {Eigen::MatrixXcd::Identity(2, 2)});
  const auto t = compute_sinr_table(cfg, ch);
  EXPECT_NEAR(t.at(0, 0, 0, 0, 0), 10.0 / 11.0, 1e-12);
  EXPECT_NEAR(t.at(0, 0, 0, 0, 1), 10.0 / 11.0, 1e-12);
}

TEST(Sinr, AttenuationWeightsOwnAndInterferingBeams) {
  // M = 2, Q = 1, N_t = 1: one beam per super-cell.
  const Dimensions d{2, 1, 1, 1, 1};
  const auto g = AttenuationProfile::from_values(2, 1, 1, {2.0, 0.5, 0.25, 3.0});
  const auto cfg = NetworkConfig::make(d, 4.0, g, 1);
  std::vector<Complex> h{Complex(1.0, 0.0), Complex(0.0, 2.0), Complex(1.0, 1.0), Complex(0.5, 0.0)};
  ChannelRealization ch(d, h, {Eigen::MatrixXcd::Identity(1, 1), Eigen::MatrixXcd::Identity(1, 1)});
  const auto t = compute_sinr_table(cfg, ch);
  EXPECT_NEAR(t.at(0, 0, 0, 0, 0), 2.0 * 1.0 / (0.5 * 4.0 + 0.25), 1e-12);
  EXPECT_NEAR(t.at(1, 0, 0, 0, 0), 3.0 * 0.25 / (0.25 * 2.0 + 0.25), 1e-12);
}

TEST(Sinr, UniqueBeamAboveOne) {
  // At most one beam of a super-cell can exceed SINR 1 for a given antenna.
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 2, 5}, db_to_linear(20.0), 4);
  for (int t = 0; t < 10000 / 20; ++t) {
    const auto s = compute_sinr_table(cfg, sample_channels(cfg, t));
    for (int n = 0; n < 2; ++n)
      for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 2; ++i) {
          int above = 0;
          for (double v : s.antenna(n, k, i)) above += v >= 1.0;
          ASSERT_LE(above, 1);
        }
  }
}

TEST(Bounds, CoincideWithSinrWhenHomogeneous) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 4}, 10.0, 2);
  for (int t = 0; t < 50; ++t) {
    const auto all = compute_sinr_with_bounds(cfg, sample_channels(cfg, t));
    const auto& v = all.sinr.values();
    for (std::size_t e = 0; e < v.size(); ++e) {
      EXPECT_NEAR(all.bounds.lower.values()[e], v[e], 1e-9 * (1.0 + v[e]));
      EXPECT_NEAR(all.bounds.upper.values()[e], v[e], 1e-9 * (1.0 + v[e]));
    }
  }
}

TEST(Bounds, SandwichUnderHeterogeneity) {
  const Dimensions d{2, 2, 2, 1, 10};
  const auto g = AttenuationProfile::log_uniform(2, 10, 2, -10.0, 10.0, Granularity::per_link, 9);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 3);
  for (int t = 0; t < 1000; ++t) {
    const auto all = compute_sinr_with_bounds(cfg, sample_channels(cfg, t));
    const auto& v = all.sinr.values();
    for (std::size_t e = 0; e < v.size(); ++e) {
      ASSERT_LE(all.bounds.lower.values()[e], v[e] * (1.0 + 1e-12));
      ASSERT_GE(all.bounds.upper.values()[e], v[e] * (1.0 - 1e-12));
    }
  }
}

TEST(Bounds, SingleBeamNetworkLowerBound) {
  const Dimensions d{1, 1, 1, 1, 3};
  const auto g = AttenuationProfile::from_values(1, 3, 1, {0.5, 2.0, 1.0});
  const auto cfg = NetworkConfig::make(d, 10.0, g, 1);
  const auto ch = sample_channels(cfg, 0);
  const auto b = compute_bounds(cfg, ch);
  for (int k = 0; k < 3; ++k)
    EXPECT_NEAR(b.lower.at(0, k, 0, 0, 0), 10.0 * 0.5 * std::norm(ch.channel(0, k, 0, 0)(0, 0)),
                1e-12);
}

TEST(ClosedForm, SingleBeamExponential) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 1, 1, 1}, 10.0);
  const auto f = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, cfg, 0);
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_NEAR(f(10.0 * std::log(2.0)), 0.5, 1e-12);
  EXPECT_THROW(f(-1.0), std::domain_error);
  EXPECT_THROW(f(std::nan("")), std::domain_error);
}

TEST(ClosedForm, MatchesSimulatedSinr) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 100}, 10.0, 21);
  std::vector<double> x;
  for (int t = 0; t < 300; ++t) {
    const auto s = compute_sinr_table(cfg, sample_channels(cfg, t));
    for (int k = 0; k < 100; ++k) x.push_back(s.at(0, k, 0, 1, 0));
  }
  const auto f = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::upper, cfg, 0);
  const double d = ks_statistic(x, [&](double v) { return f(v); });
  EXPECT_GT(ks_p_value(d, x.size()), 0.001) << "D=" << d;
}

TEST(ClosedForm, LowerBoundCdfDominatesUpper) {
  const Dimensions d{2, 2, 2, 1, 10};
  const auto g = AttenuationProfile::log_uniform(2, 10, 2, -10.0, 10.0, Granularity::per_link, 9);
  const auto cfg = NetworkConfig::make(d, 10.0, g, 3);
  const auto f1 = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::lower, cfg, 0);
  const auto f2 = ClosedFormCdf::for_cell(ClosedFormCdf::Kind::upper, cfg, 0);
  for (double x = 0.01; x < 100.0; x *= 1.3) EXPECT_GE(f1(x), f2(x));
  EXPECT_EQ(f1.swapped().kind(), ClosedFormCdf::Kind::upper);
}

TEST(Sinr, UsersAreUncorrelated) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 2, 1, 2}, 10.0, 8);
  const int n = 100000;
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (int t = 0; t < n; ++t) {
    const auto s = compute_sinr_table(cfg, sample_channels(cfg, t));
    const double a = s.at(0, 0, 0, 0, 0), b = s.at(0, 1, 0, 0, 0);
    sa += a; sb += b; saa += a * a; sbb += b * b; sab += a * b;
  }
  const double cov = sab / n - sa / n * sb / n;
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  EXPECT_LT(std::abs(corr), 0.02);
}

TEST(Sinr, CsvDump) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 2, 1, 2}, 10.0);
  const auto all = compute_sinr_with_bounds(cfg, sample_channels(cfg, 0));
  std::ostringstream plain, with_bounds;
  write_sinr_csv(plain, all.sinr);
  write_sinr_csv(with_bounds, all.sinr, &all.bounds);
  std::istringstream in(plain.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,k,i,r,l,sinr");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(with_bounds.str().substr(0, with_bounds.str().find('\n')), "n,k,i,r,l,sinr,S,T");
}

}  // namespace
}  // namespace rbsched
