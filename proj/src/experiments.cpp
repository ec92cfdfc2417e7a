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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "parallel.hpp"
#include "rbsched/experiments.hpp"
#include "rbsched/orderstats.hpp"
#include "rbsched/version.hpp"

namespace rbsched {

using nlohmann::json;
using detail::format_double;

const char* const kResultsCsvHeader =
    "M,Q,N_t,N_r,K,rho_dB,trials,mean_sum_rate,se_sum_rate,mean_fb_bits,se_fb_bits,chisq_p,"
    "ref_curve,lower_bound,beta_min,beta_max,analysis_regime";

const char* const kCalibrationCsvHeader =
    "K,rho_dB,beta,beta_min,beta_max,method,samples,analysis_regime";

std::string version_string() { return std::string(kVersion) + "+" + kGitRevision; }

namespace {

std::string cache_key(const NetworkConfig& network, const CalibrationSettings& settings,
                      std::uint64_t samples) {
  json gamma = json::array();
  for (double g : network.attenuation.values()) gamma.push_back(g);
  const json key = {{"M", network.dims.M},
                    {"Q", network.dims.Q},
                    {"N_t", network.dims.Nt},
                    {"N_r", network.dims.Nr},
                    {"K", network.dims.K},
                    {"rho", network.rho},
                    {"seed", network.seed},
                    {"gamma", config_hash(gamma)},
                    {"samples", samples},
                    {"pool", settings.pool_identical}};
  return config_hash(key);
}

}  // namespace

BetaTable obtain_beta(const NetworkConfig& network, const CalibrationSettings& settings,
                      const AttenuationSpec& attenuation, const RunOptions& options) {
  if (settings.use_closed_form(attenuation)) return calibrate_closed_form(network);

  const std::uint64_t samples = settings.resolved_samples(network.dims);
  std::filesystem::path cached;
  if (!options.beta_cache_dir.empty()) {
    cached = std::filesystem::path(options.beta_cache_dir) /
             ("beta-" + cache_key(network, settings, samples) + ".csv");
    std::ifstream in(cached);
    if (in)
      return read_beta_csv(in, network.dims, quantile_target(network.dims),
                           CalibrationMethod::empirical);
  }
  const BetaTable table =
      calibrate_beta(network, samples, {settings.pool_identical, options.workers});
  if (!cached.empty()) {
    std::filesystem::create_directories(cached.parent_path());
    const auto tmp = cached.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw IoError("cannot write beta cache '" + tmp + "'");
      write_beta_csv(out, table);
    }
    std::filesystem::rename(tmp, cached);
  }
  return table;
}

namespace {

void write_round_log(std::ostream& log, const ScheduleOutcome& o, std::uint64_t trial) {
  json rec;
  rec["trial"] = trial;
  rec["sum_rate"] = sum_rate(o);
  rec["feedback_bits"] = o.feedback_bits;
  json beams = json::array();
  const Dimensions& d = o.dims;
  for (int n = 0; n < d.M; ++n)
    for (int r = 0; r < d.Q; ++r)
      for (int l = 0; l < d.Nt; ++l) {
        const BeamAssignment& b = o.beam(n, r, l);
        json e = {{"n", n}, {"r", r}, {"l", l}};
        if (b.user) {
          e["k"] = b.user->k;
          e["i"] = b.user->i;
          e["sinr"] = b.sinr;
          e["rate"] = b.rate;
        } else {
          e["k"] = nullptr;
        }
        beams.push_back(e);
      }
  rec["beams"] = beams;
  log << rec.dump() << '\n';
}

}  // namespace

PointResult run_point(const NetworkConfig& network, const BetaTable& beta, std::uint64_t trials,
                      const RunOptions& options, std::ostream* log) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const Dimensions& d = network.dims;
  std::vector<ScheduleOutcome> outcomes(trials);
  detail::parallel_for(trials, options.workers,
                       [&](std::size_t t) { outcomes[t] = run_round(network, beta, t); });

  PointResult res;
  res.dims = d;
  res.rho_dB = linear_to_db(network.rho);
  res.trials = trials;

  std::vector<double> rates(trials), set_size(trials);
  std::vector<std::vector<double>> cell_rates(d.M, std::vector<double>(trials));
  for (std::size_t t = 0; t < trials; ++t) {
    const ScheduleOutcome& o = outcomes[t];
    const auto per_cell = cell_sum_rates(o);
    double total = 0.0;
    std::size_t members = 0;
    for (int n = 0; n < d.M; ++n) {
      cell_rates[n][t] = per_cell[n];
      total += per_cell[n];
      members += o.candidates[n];
    }
    rates[t] = total;
    set_size[t] = static_cast<double>(members) / d.total_beams();
    res.sets_disjoint = res.sets_disjoint && o.sets_disjoint;
    if (log) write_round_log(*log, o, t);
  }
  res.sum_rate = mean_se(rates);
  for (const auto& c : cell_rates) res.cell_rate.push_back(mean_se(c));
  res.feedback_bits = feedback_stats(outcomes).per_cell_average;
  res.candidate_set_size = mean_se(set_size);
  res.fairness = fairness_histogram(outcomes);
  res.reference_curve = scaling_reference(d);

  const MixtureWeights weights = binomial_candidate_weights(d.K * d.Nr);
  const RngPolicy policy(network.seed);
  for (int n = 0; n < d.M; ++n) {
    Stream stream = policy.stream(StreamDomain::integral, static_cast<std::uint64_t>(n));
    const RateBounds b = rate_bounds(network, n, weights, options.integral_samples, stream);
    res.cell_lower_bound.push_back(b.lower);
    res.lower_bound += b.lower;
  }
  res.beta_min = beta.min();
  res.beta_max = beta.max();
  res.analysis_regime = beta.in_analysis_regime();
  return res;
}

std::vector<PointResult> run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  std::ofstream log;
  if (!options.log_path.empty()) {
    log.open(options.log_path);
    if (!log) throw IoError("cannot open log '" + options.log_path + "'");
  }
  std::vector<PointResult> results;
  for (const SweepPoint& p : expand_sweep(config)) {
    const NetworkConfig network = config.network(p.dims, p.rho_dB);
    const BetaTable beta = obtain_beta(network, config.calibration, config.attenuation, options);
    if (log.is_open())
      log << json{{"point", results.size()}, {"K", p.dims.K}, {"M", p.dims.M}, {"Q", p.dims.Q},
                  {"N_t", p.dims.Nt}, {"N_r", p.dims.Nr}, {"rho_dB", p.rho_dB}}
                 .dump()
          << '\n';
    PointResult r = run_point(network, beta, p.trials, options, log.is_open() ? &log : nullptr);
    r.rho_dB = p.rho_dB;
    results.push_back(std::move(r));
  }
  return results;
}

void write_results_csv(std::ostream& out, std::span<const PointResult> results) {
  out << kResultsCsvHeader << '\n';
  for (const auto& r : results) {
    out << r.dims.M << ',' << r.dims.Q << ',' << r.dims.Nt << ',' << r.dims.Nr << ',' << r.dims.K
        << ',' << format_double(r.rho_dB) << ',' << r.trials << ','
        << format_double(r.sum_rate.mean) << ',' << format_double(r.sum_rate.se) << ','
        << format_double(r.feedback_bits.mean) << ',' << format_double(r.feedback_bits.se) << ','
        << format_double(r.fairness.chi_square.p_value) << ','
        << format_double(r.reference_curve) << ',' << format_double(r.lower_bound) << ','
        << format_double(r.beta_min) << ',' << format_double(r.beta_max) << ','
        << (r.analysis_regime ? 1 : 0) << '\n';
  }
}

std::vector<CalibrationRow> run_calibration_grid(const ExperimentConfig& config,
                                                 const RunOptions& options) {
  std::vector<CalibrationRow> rows;
  for (double rho : config.calibrate.rho_dB) {
    for (int K : config.calibrate.K) {
      Dimensions d = config.dims;
      d.K = K;
      const NetworkConfig network = config.network(d, rho);
      const BetaTable beta = obtain_beta(network, config.calibration, config.attenuation, options);
      const bool closed = beta.method() == CalibrationMethod::closed_form;
      rows.push_back({d, rho, beta.mean(), beta.min(), beta.max(), beta.method(),
                      closed ? 0 : config.calibration.resolved_samples(d),
                      beta.in_analysis_regime()});
    }
  }
  return rows;
}

void write_calibration_csv(std::ostream& out, std::span<const CalibrationRow> rows) {
  out << kCalibrationCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.dims.K << ',' << format_double(r.rho_dB) << ',' << format_double(r.beta_mean) << ','
        << format_double(r.beta_min) << ',' << format_double(r.beta_max) << ','
        << to_string(r.method) << ',' << r.samples << ',' << (r.analysis_regime ? 1 : 0) << '\n';
}

json run_metadata(const ExperimentConfig& config, const std::string& kind) {
  const json canonical = config.to_json();
  std::string note;
  switch (config.attenuation.kind) {
    case AttenuationSpec::Kind::scalar:
      note = "homogeneous attenuation, gamma = " + format_double(config.attenuation.value) +
             " on every link (assumed default)";
      break;
    case AttenuationSpec::Kind::log_uniform:
      note = "log-uniform attenuation in [" + format_double(config.attenuation.min_dB) + ", " +
             format_double(config.attenuation.max_dB) + "] dB";
      break;
    case AttenuationSpec::Kind::csv:
      note = "attenuation read from " + config.attenuation.path;
      break;
  }
  return {{"kind", kind},
          {"config_hash", config_hash(canonical)},
          {"version", version_string()},
          {"attenuation_note", note},
          {"config", canonical}};
}

namespace {

ExperimentConfig figure_base(std::uint64_t seed, std::uint64_t trials) {
  ExperimentConfig c;
  c.dims = {1, 2, 2, 1, 10};
  c.rho_dB = 10.0;
  c.seed = seed;
  c.calibration.method = CalibrationSettings::Method::automatic;
  c.sweep.variable = SweepVariable::K;
  c.sweep.values = {10, 31, 100, 316, 1000, 3162, 10000};
  c.sweep.trials = trials;
  c.calibrate.K = {c.dims.K};
  c.calibrate.rho_dB = {c.rho_dB};
  return c;
}

}  // namespace

ExperimentConfig figure_threshold_config(std::uint64_t seed) {
  ExperimentConfig c = figure_base(seed, 100);
  c.dims = {3, 2, 2, 1, 10};
  c.calibrate.K = {10, 20, 31, 50, 100, 316, 1000, 3162, 10000};
  c.calibrate.rho_dB = {0.0, 5.0, 10.0};
  return c;
}

ExperimentConfig figure_sum_rate_config(std::uint64_t seed, std::uint64_t trials) {
  ExperimentConfig c = figure_base(seed, trials);
  c.sweep.series = {{1, {}, 2, {}, {}, {}}, {1, {}, 3, {}, {}, {}},
                    {2, {}, 2, {}, {}, {}}, {2, {}, 3, {}, {}, {}}};
  return c;
}

ExperimentConfig figure_feedback_config(std::uint64_t seed, std::uint64_t trials) {
  ExperimentConfig c = figure_base(seed, trials);
  c.dims.M = 2;
  c.sweep.series = {{{}, 1, 2, {}, {}, {}}, {{}, 2, 2, {}, {}, {}}, {{}, 2, 3, {}, {}, {}}};
  return c;
}

ExperimentConfig figure_clustering_config(std::uint64_t seed, std::uint64_t trials) {
  ExperimentConfig c = figure_base(seed, trials);
  c.dims = {6, 1, 2, 1, 10};
  c.sweep.variable = SweepVariable::clusters;
  c.sweep.values.clear();
  c.sweep.clusters = {{6, 1}, {3, 2}, {2, 3}, {1, 6}};
  c.sweep.total_users = {60, 180, 600, 1800, 6000};
  c.sweep.series = {{{}, {}, 2, {}, {}, {}}, {{}, {}, 4, {}, {}, {}}};
  return c;
}

void sweep_figures(const std::string& out_dir, std::uint64_t seed, std::uint64_t trials,
                   const RunOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto emit = [&](const std::string& name, const ExperimentConfig& cfg, const std::string& kind,
                  auto&& write) {
    const fs::path csv = fs::path(out_dir) / name;
    {
      std::ofstream out(csv);
      if (!out) throw IoError("cannot write '" + csv.string() + "'");
      write(out);
    }
    std::ofstream meta(csv.string() + ".meta.json");
    meta << run_metadata(cfg, kind).dump(2) << '\n';
  };

  RunOptions quiet = options;
  quiet.log_path.clear();

  const ExperimentConfig fig1 = figure_threshold_config(seed);
  emit("fig1.csv", fig1, "calibrate", [&](std::ostream& out) {
    const auto rows = run_calibration_grid(fig1, quiet);
    write_calibration_csv(out, rows);
  });
  const std::pair<const char*, ExperimentConfig> sweeps[] = {
      {"fig2.csv", figure_sum_rate_config(seed, trials)},
      {"fig3.csv", figure_feedback_config(seed, trials)},
      {"fig4.csv", figure_clustering_config(seed, trials)}};
  for (const auto& [name, cfg] : sweeps)
    emit(name, cfg, "simulate", [&](std::ostream& out) {
      const auto results = run_sweep(cfg, quiet);
      write_results_csv(out, results);
    });
}

}  // namespace rbsched
