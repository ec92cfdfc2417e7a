// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "rbsched/config.hpp"

namespace rbsched {
namespace {

TEST(Config, RejectsNonPositiveDimensions) {
  const Dimensions good{2, 2, 2, 1, 10};
  for (int field = 0; field < 5; ++field) {
    Dimensions d = good;
    int* slot[] = {&d.M, &d.Q, &d.Nt, &d.Nr, &d.K};
    *slot[field] = 0;
    const char* names[] = {"M", "Q", "N_t", "N_r", "K"};
    try {
      NetworkConfig::homogeneous(d, 10.0);
      FAIL() << "accepted " << names[field] << " = 0";
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), names[field]);
    }
  }
}

TEST(Config, RejectsBadRho) {
  const Dimensions d{1, 1, 1, 1, 1};
  EXPECT_THROW(NetworkConfig::homogeneous(d, 0.0), ConfigError);
  EXPECT_THROW(NetworkConfig::homogeneous(d, -1.0), ConfigError);
  EXPECT_THROW(NetworkConfig::homogeneous(d, std::nan("")), ConfigError);
  try {
    NetworkConfig::homogeneous(d, 0.0);
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "rho");
  }
}

TEST(Config, RejectsAttenuationShapeMismatch) {
  const Dimensions d{2, 2, 2, 1, 3};
  EXPECT_THROW(NetworkConfig::make(d, 10.0, AttenuationProfile::homogeneous(2, 4, 2), 1),
               ConfigError);
  EXPECT_THROW(NetworkConfig::make(d, 10.0, AttenuationProfile::homogeneous(2, 3, 2, 0.0), 1),
               ConfigError);
}

TEST(Config, DecibelConversion) {
  EXPECT_DOUBLE_EQ(db_to_linear(10.0), 10.0);
  EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
  EXPECT_NEAR(db_to_linear(20.0), 100.0, 1e-12);
  EXPECT_NEAR(linear_to_db(1000.0), 30.0, 1e-12);
}

TEST(Config, FeedbackBitsPerMessage) {
  EXPECT_EQ(feedback_bits_per_message({1, 1, 1, 1, 1}), 0);
  EXPECT_EQ(feedback_bits_per_message({1, 1, 2, 1, 1}), 1);
  EXPECT_EQ(feedback_bits_per_message({1, 2, 2, 1, 1}), 2);
  EXPECT_EQ(feedback_bits_per_message({1, 3, 2, 1, 1}), 3);
  EXPECT_EQ(feedback_bits_per_message({1, 1, 5, 1, 1}), 3);
  EXPECT_EQ(feedback_bits_per_message({1, 4, 4, 1, 1}), 4);
}

TEST(Attenuation, HomogeneousExtremes) {
  const auto g = AttenuationProfile::homogeneous(3, 5, 2, 0.5);
  EXPECT_TRUE(g.is_homogeneous());
  const auto e = g.extremes(1);
  EXPECT_EQ(e.zeta_min, 0.5);
  EXPECT_EQ(e.zeta_max, 0.5);
  EXPECT_EQ(e.eta_min, 0.5);
  EXPECT_EQ(e.eta_max, 0.5);
}

TEST(Attenuation, ExtremesSeparateServingAndAllEntries) {
  // M = 2, K = 1, Q = 1: gamma[n][0][m][0].
  const auto g = AttenuationProfile::from_values(2, 1, 1, {4.0, 0.5, 0.25, 2.0});
  const auto e0 = g.extremes(0);
  EXPECT_EQ(e0.eta_min, 4.0);
  EXPECT_EQ(e0.eta_max, 4.0);
  EXPECT_EQ(e0.zeta_min, 0.5);
  EXPECT_EQ(e0.zeta_max, 4.0);
  const auto e1 = g.extremes(1);
  EXPECT_EQ(e1.eta_min, 2.0);
  EXPECT_EQ(e1.zeta_min, 0.25);
  EXPECT_EQ(e1.zeta_max, 2.0);
}

TEST(Attenuation, LogUniformRangeAndDeterminism) {
  const auto a = AttenuationProfile::log_uniform(2, 20, 2, -10.0, 10.0, Granularity::per_link, 7);
  const auto b = AttenuationProfile::log_uniform(2, 20, 2, -10.0, 10.0, Granularity::per_link, 7);
  const auto c = AttenuationProfile::log_uniform(2, 20, 2, -10.0, 10.0, Granularity::per_link, 8);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), c.values());
  for (double v : a.values()) {
    EXPECT_GE(v, 0.1);
    EXPECT_LE(v, 10.0);
  }
  EXPECT_FALSE(a.is_homogeneous());
}

TEST(Attenuation, PerUserSharesOneDraw) {
  const auto g = AttenuationProfile::log_uniform(2, 5, 3, 0.0, 20.0, Granularity::per_user, 3);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k < 5; ++k)
      for (int m = 0; m < 2; ++m)
        for (int r = 0; r < 3; ++r) EXPECT_EQ(g(n, k, m, r), g(n, k, 0, 0));
}

}  // namespace
}  // namespace rbsched
