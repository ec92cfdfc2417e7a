// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rbsched/experiments.hpp"

namespace rbsched {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rbsched_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string csv_of(const std::vector<PointResult>& r) {
  std::ostringstream out;
  write_results_csv(out, r);
  return out.str();
}

TEST(Experiments, RunPointIndependentOfWorkers) {
  const auto cfg = NetworkConfig::homogeneous({2, 2, 2, 1, 40}, 10.0, 3);
  const auto beta = calibrate_closed_form(cfg);
  RunOptions one, four;
  four.workers = 4;
  const auto a = run_point(cfg, beta, 400, one);
  const auto b = run_point(cfg, beta, 400, four);
  EXPECT_EQ(csv_of({a}), csv_of({b}));
  EXPECT_EQ(a.fairness.counts, b.fairness.counts);
}

TEST(Experiments, SweepCsvLayout) {
  const auto c = parse_config_text(R"({"M": 1, "Q": 2, "N_t": 2, "K": 10, "seed": 4,
      "calibration": {"method": "auto"}, "sweep": {"values": [10, 40], "trials": 100}})");
  const auto results = run_sweep(c, {});
  ASSERT_EQ(results.size(), 2u);
  std::istringstream in(csv_of(results));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kResultsCsvHeader);
  EXPECT_EQ(line,
            "M,Q,N_t,N_r,K,rho_dB,trials,mean_sum_rate,se_sum_rate,mean_fb_bits,se_fb_bits,"
            "chisq_p,ref_curve,lower_bound,beta_min,beta_max,analysis_regime");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 16);
  }
  EXPECT_EQ(rows, 2);
  EXPECT_LT(results[0].sum_rate.mean, results[1].sum_rate.mean);
}

TEST(Experiments, BetaCacheIsReused) {
  const auto dir = scratch_dir("beta_cache");
  const auto net = NetworkConfig::homogeneous({1, 1, 2, 1, 10}, 10.0, 5);
  CalibrationSettings s;
  s.samples_per_user = 2000;
  RunOptions opt;
  opt.beta_cache_dir = dir.string();
  const auto a = obtain_beta(net, s, AttenuationSpec{}, opt);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  ASSERT_EQ(files.size(), 1u);
  EXPECT_EQ(files[0].extension(), ".csv");
  // Overwrite the cached entry; a second call must read it back.
  {
    std::ofstream out(files[0]);
    BetaTable t(1, 10, 1, a.target(), CalibrationMethod::empirical);
    for (int k = 0; k < 10; ++k) t.at(0, k, 0) = 42.0;
    write_beta_csv(out, t);
  }
  const auto b = obtain_beta(net, s, AttenuationSpec{}, opt);
  EXPECT_EQ(b.at(0, 3, 0), 42.0);
  s.samples_per_user = 3000;
  const auto c = obtain_beta(net, s, AttenuationSpec{}, opt);
  EXPECT_NE(c.at(0, 3, 0), 42.0);
}

TEST(Experiments, RoundLogHasOneRecordPerRound) {
  const auto cfg = NetworkConfig::homogeneous({1, 1, 2, 1, 5}, 10.0, 6);
  std::ostringstream log;
  run_point(cfg, calibrate_closed_form(cfg), 120, {}, &log);
  std::istringstream in(log.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_TRUE(nlohmann::json::parse(line).is_object());
  }
  EXPECT_EQ(lines, 120);
}

TEST(Experiments, CalibrationGridOrder) {
  const auto c = parse_config_text(R"({"M": 3, "Q": 2, "N_t": 2,
      "calibration": {"method": "closed_form"},
      "calibrate": {"K": [10, 100], "rho_dB": [0, 10]}})");
  const auto rows = run_calibration_grid(c, {});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].dims.K, 10);
  EXPECT_EQ(rows[1].dims.K, 100);
  EXPECT_EQ(rows[2].rho_dB, 10.0);
  EXPECT_LT(rows[0].beta_mean, rows[1].beta_mean);
  EXPECT_LT(rows[0].beta_mean, rows[2].beta_mean);
  std::ostringstream out;
  write_calibration_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), kCalibrationCsvHeader);
}

TEST(Experiments, SingleBeamCalibrationFollowsLogK) {
  const auto c = parse_config_text(R"({"rho_dB": 10, "calibration": {"method": "empirical",
      "samples_per_user": 200000}, "calibrate": {"K": [50]}})");
  const auto rows = run_calibration_grid(c, {});
  ASSERT_EQ(rows.size(), 1u);
  const double oracle = 10.0 * std::log(50.0);
  EXPECT_NEAR(rows[0].beta_mean, oracle, 0.05 * oracle);
  std::ostringstream out;
  write_calibration_csv(out, rows);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Experiments, MetadataCarriesHashAndVersion) {
  const auto c = parse_config_text(R"({"K": 5})");
  const auto meta = run_metadata(c, "simulate");
  EXPECT_EQ(meta["kind"], "simulate");
  EXPECT_EQ(meta["config_hash"], config_hash(c.to_json()));
  EXPECT_EQ(meta["version"], version_string());
  EXPECT_TRUE(meta.contains("config"));
}

}  // namespace
}  // namespace rbsched
