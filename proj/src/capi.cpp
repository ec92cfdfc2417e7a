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

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rbsched/calibration.hpp"
#include "rbsched/config_io.hpp"
#include "rbsched/experiments.hpp"
#include "rbsched/metrics.hpp"
#include "rbsched/orderstats.hpp"
#include "rbsched/rbsched.h"
#include "rbsched/scheduler.hpp"
#include "rbsched/sinr.hpp"
#include "rbsched/verify.hpp"

struct rbs_config {
  rbsched::ExperimentConfig config;
};

struct rbs_beta {
  rbsched::BetaTable table;
  rbsched::Dimensions dims;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

rbs_status fail(rbs_status status, const std::string& message, const std::string& field = {}) {
  g_error = message;
  g_field = field;
  return status;
}

template <class Body>
rbs_status guarded(Body&& body) {
  g_error.clear();
  g_field.clear();
  try {
    return body();
  } catch (const rbsched::ConfigError& e) {
    return fail(RBS_ERR_CONFIG, e.what(), e.field());
  } catch (const rbsched::CalibrationError& e) {
    return fail(RBS_ERR_CALIBRATION, e.what());
  } catch (const rbsched::UnsupportedError& e) {
    return fail(RBS_ERR_UNSUPPORTED, e.what());
  } catch (const rbsched::IoError& e) {
    return fail(RBS_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(RBS_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(RBS_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RBS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(RBS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RBS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RBS_ERR_INTERNAL, "unknown error");
  }
}

rbsched::RunOptions to_options(const rbs_run_options* opts) {
  rbsched::RunOptions o;
  if (!opts) return o;
  o.workers = opts->workers > 0 ? opts->workers : 1;
  if (opts->beta_cache_dir) o.beta_cache_dir = opts->beta_cache_dir;
  if (opts->log_path) o.log_path = opts->log_path;
  return o;
}

std::ofstream open_output(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rbsched::IoError(std::string("cannot write '") + path + "'");
  return out;
}

#define RBS_REQUIRE(cond, what) \
  if (!(cond)) return fail(RBS_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* rbs_version(void) {
  static const std::string version = rbsched::version_string();
  return version.c_str();
}

const char* rbs_last_error(void) { return g_error.c_str(); }
const char* rbs_last_error_field(void) { return g_field.c_str(); }

rbs_status rbs_config_load(const char* path, rbs_config** out) {
  return guarded([&] {
    RBS_REQUIRE(path && out, "path and out must be non-null");
    *out = new rbs_config{rbsched::load_config(path)};
    return RBS_OK;
  });
}

rbs_status rbs_config_parse(const char* json_text, rbs_config** out) {
  return guarded([&] {
    RBS_REQUIRE(json_text && out, "json_text and out must be non-null");
    *out = new rbs_config{rbsched::parse_config_text(json_text)};
    return RBS_OK;
  });
}

void rbs_config_free(rbs_config* cfg) { delete cfg; }

rbs_status rbs_config_set_seed(rbs_config* cfg, uint64_t seed) {
  return guarded([&] {
    RBS_REQUIRE(cfg, "cfg must be non-null");
    cfg->config.seed = seed;
    return RBS_OK;
  });
}

rbs_status rbs_config_set_trials(rbs_config* cfg, uint64_t trials) {
  return guarded([&] {
    RBS_REQUIRE(cfg, "cfg must be non-null");
    if (trials < 100) throw rbsched::ConfigError("trials", "must be >= 100");
    cfg->config.sweep.trials = trials;
    return RBS_OK;
  });
}

rbs_status rbs_config_set_samples(rbs_config* cfg, uint64_t samples) {
  return guarded([&] {
    RBS_REQUIRE(cfg, "cfg must be non-null");
    if (samples == 0) throw rbsched::ConfigError("calibration.samples_per_user", "must be >= 1");
    cfg->config.calibration.samples_per_user = samples;
    return RBS_OK;
  });
}

rbs_status rbs_config_get_dims(const rbs_config* cfg, rbs_dims* out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out, "cfg and out must be non-null");
    const auto& d = cfg->config.dims;
    *out = {d.M, d.Q, d.Nt, d.Nr, d.K};
    return RBS_OK;
  });
}

rbs_status rbs_config_get_seed(const rbs_config* cfg, uint64_t* out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out, "cfg and out must be non-null");
    *out = cfg->config.seed;
    return RBS_OK;
  });
}

rbs_status rbs_config_hash(const rbs_config* cfg, char* buf, size_t len) {
  return guarded([&] {
    RBS_REQUIRE(cfg && buf, "cfg and buf must be non-null");
    const std::string h = rbsched::config_hash(cfg->config.to_json());
    RBS_REQUIRE(len > h.size(), "buffer too small");
    std::memcpy(buf, h.c_str(), h.size() + 1);
    return RBS_OK;
  });
}

rbs_status rbs_calibrate(const rbs_config* cfg, const rbs_run_options* opts, const char* out_csv) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out_csv, "cfg and out_csv must be non-null");
    const auto rows = rbsched::run_calibration_grid(cfg->config, to_options(opts));
    auto out = open_output(out_csv);
    rbsched::write_calibration_csv(out, rows);
    auto meta = open_output((std::string(out_csv) + ".meta.json").c_str());
    meta << rbsched::run_metadata(cfg->config, "calibrate").dump(2) << '\n';
    return RBS_OK;
  });
}

rbs_status rbs_simulate(const rbs_config* cfg, const rbs_run_options* opts, const char* out_csv) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out_csv, "cfg and out_csv must be non-null");
    const auto results = rbsched::run_sweep(cfg->config, to_options(opts));
    auto out = open_output(out_csv);
    rbsched::write_results_csv(out, results);
    auto meta = open_output((std::string(out_csv) + ".meta.json").c_str());
    meta << rbsched::run_metadata(cfg->config, "simulate").dump(2) << '\n';
    return RBS_OK;
  });
}

rbs_status rbs_verify(uint64_t seed, const rbs_run_options* opts, int inject_fault,
                      const char* out_json, int* all_passed) {
  return guarded([&] {
    rbsched::VerifyOptions vo;
    vo.seed = seed;
    vo.workers = to_options(opts).workers;
    vo.fault = inject_fault ? rbsched::Fault::swap_bound_cdfs : rbsched::Fault::none;
    const rbsched::VerifyReport report = rbsched::run_verification(vo);
    if (out_json) {
      auto doc = report.to_json();
      doc["seed"] = seed;
      doc["fault_injected"] = inject_fault != 0;
      doc["version"] = rbsched::version_string();
      auto out = open_output(out_json);
      out << doc.dump(2) << '\n';
    }
    if (all_passed) *all_passed = report.passed() ? 1 : 0;
    return RBS_OK;
  });
}

rbs_status rbs_sweep_figs(uint64_t seed, uint64_t trials, const rbs_run_options* opts,
                          const char* out_dir) {
  return guarded([&] {
    RBS_REQUIRE(out_dir, "out_dir must be non-null");
    if (trials < 100) throw rbsched::ConfigError("trials", "must be >= 100");
    rbsched::sweep_figures(out_dir, seed, trials, to_options(opts));
    return RBS_OK;
  });
}

rbs_status rbs_beta_calibrate(const rbs_config* cfg, const rbs_run_options* opts, rbs_beta** out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out, "cfg and out must be non-null");
    const auto network = cfg->config.network();
    auto table = rbsched::obtain_beta(network, cfg->config.calibration, cfg->config.attenuation,
                                      to_options(opts));
    *out = new rbs_beta{std::move(table), network.dims};
    return RBS_OK;
  });
}

rbs_status rbs_beta_load(const rbs_config* cfg, const char* path, rbs_beta** out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && path && out, "cfg, path and out must be non-null");
    std::ifstream in(path);
    if (!in) throw rbsched::IoError(std::string("cannot open '") + path + "'");
    const auto& d = cfg->config.dims;
    auto table = rbsched::read_beta_csv(in, d, rbsched::quantile_target(d),
                                        rbsched::CalibrationMethod::empirical);
    *out = new rbs_beta{std::move(table), d};
    return RBS_OK;
  });
}

rbs_status rbs_beta_save(const rbs_beta* beta, const char* path) {
  return guarded([&] {
    RBS_REQUIRE(beta && path, "beta and path must be non-null");
    auto out = open_output(path);
    rbsched::write_beta_csv(out, beta->table);
    return RBS_OK;
  });
}

rbs_status rbs_beta_get(const rbs_beta* beta, int n, int k, int r, double* out) {
  return guarded([&] {
    RBS_REQUIRE(beta && out, "beta and out must be non-null");
    const auto& t = beta->table;
    RBS_REQUIRE(n >= 0 && n < t.M() && k >= 0 && k < t.K() && r >= 0 && r < t.Q(),
                "index out of range");
    *out = t.at(n, k, r);
    return RBS_OK;
  });
}

void rbs_beta_free(rbs_beta* beta) { delete beta; }

rbs_status rbs_round_run(const rbs_config* cfg, const rbs_beta* beta, uint64_t trial,
                         rbs_round_summary* out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && beta && out, "cfg, beta and out must be non-null");
    const auto network = cfg->config.network();
    RBS_REQUIRE(beta->table.matches(network.dims), "beta table does not match the config");
    const auto o = rbsched::run_round(network, beta->table, trial);
    rbs_round_summary s{};
    s.sum_rate = rbsched::sum_rate(o);
    for (int b : o.feedback_bits) s.feedback_bits += b;
    for (int m : o.feedback_messages) s.feedback_messages += m;
    for (const auto& b : o.beams) s.served_beams += b.user ? 1 : 0;
    *out = s;
    return RBS_OK;
  });
}

rbs_status rbs_sinr_dump(const rbs_config* cfg, uint64_t trial, const char* out_csv) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out_csv, "cfg and out_csv must be non-null");
    const auto network = cfg->config.network();
    const auto all =
        rbsched::compute_sinr_with_bounds(network, rbsched::sample_channels(network, trial));
    auto out = open_output(out_csv);
    rbsched::write_sinr_csv(out, all.sinr, &all.bounds);
    return RBS_OK;
  });
}

rbs_status rbs_cdf_eval(const rbs_config* cfg, int kind, int n, double x, double* out) {
  return guarded([&] {
    RBS_REQUIRE(cfg && out, "cfg and out must be non-null");
    RBS_REQUIRE(kind == 0 || kind == 1, "kind must be 0 (lower) or 1 (upper)");
    const auto network = cfg->config.network();
    RBS_REQUIRE(n >= 0 && n < network.dims.M, "super-cell index out of range");
    const auto cdf = rbsched::ClosedFormCdf::for_cell(
        kind == 0 ? rbsched::ClosedFormCdf::Kind::lower : rbsched::ClosedFormCdf::Kind::upper,
        network, n);
    *out = cdf(x);
    return RBS_OK;
  });
}

rbs_status rbs_order_stat_cdf(double u, int K, int j, double* out) {
  return guarded([&] {
    RBS_REQUIRE(out, "out must be non-null");
    *out = rbsched::order_stat_cdf(u, K, j);
    return RBS_OK;
  });
}

}  // extern "C"
