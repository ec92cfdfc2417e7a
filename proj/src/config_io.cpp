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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "rbsched/config_io.hpp"

namespace rbsched {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix,
                    std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(join(prefix, key), "unknown key");
}

long long as_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9e15)
      return static_cast<long long>(d);
  }
  throw ConfigError(field, "expected an integer");
}

int as_count(const json& v, const std::string& field, long long min_value = 1) {
  const long long n = as_integer(v, field);
  if (n < min_value) throw ConfigError(field, "must be >= " + std::to_string(min_value));
  if (n > 100000000) throw ConfigError(field, "value too large");
  return static_cast<int>(n);
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
  return d;
}

std::uint64_t as_u64(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const long long n = as_integer(v, field);
  if (n < 0) throw ConfigError(field, "must be >= 0");
  return static_cast<std::uint64_t>(n);
}

AttenuationSpec parse_attenuation(const json& v, const std::string& base_dir) {
  const std::string field = "attenuation";
  AttenuationSpec spec;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    return path.lexically_normal().string();
  };
  if (v.is_number()) {
    spec.kind = AttenuationSpec::Kind::scalar;
    spec.value = as_real(v, field);
    if (!(spec.value > 0.0)) throw ConfigError(field, "must be positive");
  } else if (v.is_string()) {
    spec.kind = AttenuationSpec::Kind::csv;
    spec.path = resolve(v.get<std::string>());
  } else if (v.is_object() && v.contains("csv")) {
    reject_unknown(v, field, {"csv"});
    if (!v["csv"].is_string()) throw ConfigError(field + ".csv", "expected a path");
    spec.kind = AttenuationSpec::Kind::csv;
    spec.path = resolve(v["csv"].get<std::string>());
  } else if (v.is_object()) {
    reject_unknown(v, field, {"min_dB", "max_dB", "granularity"});
    if (!v.contains("min_dB")) throw ConfigError(field + ".min_dB", "missing");
    if (!v.contains("max_dB")) throw ConfigError(field + ".max_dB", "missing");
    spec.kind = AttenuationSpec::Kind::log_uniform;
    spec.min_dB = as_real(v["min_dB"], field + ".min_dB");
    spec.max_dB = as_real(v["max_dB"], field + ".max_dB");
    if (spec.min_dB > spec.max_dB) throw ConfigError(field + ".max_dB", "must be >= min_dB");
    if (v.contains("granularity")) {
      const auto& g = v["granularity"];
      if (g == "per_link")
        spec.granularity = Granularity::per_link;
      else if (g == "per_user")
        spec.granularity = Granularity::per_user;
      else
        throw ConfigError(field + ".granularity", "expected \"per_link\" or \"per_user\"");
    }
  } else {
    throw ConfigError(field, "expected a number, a dB range object or a CSV path");
  }
  return spec;
}

void apply_dimension(const json& obj, const std::string& prefix, Dimensions& d) {
  if (obj.contains("M")) d.M = as_count(obj["M"], join(prefix, "M"));
  if (obj.contains("Q")) d.Q = as_count(obj["Q"], join(prefix, "Q"));
  if (obj.contains("N_t")) d.Nt = as_count(obj["N_t"], join(prefix, "N_t"));
  if (obj.contains("N_r")) d.Nr = as_count(obj["N_r"], join(prefix, "N_r"));
  if (obj.contains("K")) d.K = as_count(obj["K"], join(prefix, "K"));
}

double parse_rho_dB(const json& obj, const std::string& prefix, double current) {
  if (obj.contains("rho_dB") && obj.contains("rho"))
    throw ConfigError(join(prefix, "rho"), "give rho or rho_dB, not both");
  if (obj.contains("rho_dB")) return as_real(obj["rho_dB"], join(prefix, "rho_dB"));
  if (obj.contains("rho")) {
    const double rho = as_real(obj["rho"], join(prefix, "rho"));
    if (!(rho > 0.0)) throw ConfigError(join(prefix, "rho"), "must be positive");
    return linear_to_db(rho);
  }
  return current;
}

CalibrationSettings parse_calibration(const json& v) {
  if (!v.is_object()) throw ConfigError("calibration", "expected an object");
  reject_unknown(v, "calibration", {"method", "samples_per_user", "pool_identical"});
  CalibrationSettings s;
  if (v.contains("method")) {
    const auto& m = v["method"];
    if (m == "empirical")
      s.method = CalibrationSettings::Method::empirical;
    else if (m == "closed_form")
      s.method = CalibrationSettings::Method::closed_form;
    else if (m == "auto")
      s.method = CalibrationSettings::Method::automatic;
    else
      throw ConfigError("calibration.method", "expected \"empirical\", \"closed_form\" or \"auto\"");
  }
  if (v.contains("samples_per_user")) {
    s.samples_per_user = as_u64(v["samples_per_user"], "calibration.samples_per_user");
    if (*s.samples_per_user == 0) throw ConfigError("calibration.samples_per_user", "must be >= 1");
  }
  if (v.contains("pool_identical")) {
    if (!v["pool_identical"].is_boolean())
      throw ConfigError("calibration.pool_identical", "expected a boolean");
    s.pool_identical = v["pool_identical"].get<bool>();
  }
  return s;
}

std::vector<double> number_list(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw ConfigError(field, "expected a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_real(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

SweepSpec parse_sweep(const json& v) {
  if (!v.is_object()) throw ConfigError("sweep", "expected an object");
  reject_unknown(v, "sweep", {"variable", "values", "series", "trials", "clusters", "total_users"});
  SweepSpec s;
  const std::string variable = v.value("variable", std::string("K"));
  if (variable == "K")
    s.variable = SweepVariable::K;
  else if (variable == "clusters")
    s.variable = SweepVariable::clusters;
  else if (variable == "rho_dB")
    s.variable = SweepVariable::rho_dB;
  else if (variable == "N_t")
    s.variable = SweepVariable::Nt;
  else
    throw ConfigError("sweep.variable", "expected \"K\", \"clusters\", \"rho_dB\" or \"N_t\"");

  if (s.variable == SweepVariable::clusters) {
    if (!v.contains("clusters") || !v["clusters"].is_array() || v["clusters"].empty())
      throw ConfigError("sweep.clusters", "expected a nonempty array of [M, Q] pairs");
    for (std::size_t i = 0; i < v["clusters"].size(); ++i) {
      const auto& pair = v["clusters"][i];
      const std::string f = "sweep.clusters[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) throw ConfigError(f, "expected [M, Q]");
      s.clusters.emplace_back(as_count(pair[0], f), as_count(pair[1], f));
    }
    if (!v.contains("total_users")) throw ConfigError("sweep.total_users", "missing");
    for (double u : number_list(v["total_users"], "sweep.total_users")) {
      if (u < 1 || u != std::floor(u)) throw ConfigError("sweep.total_users", "expected positive integers");
      s.total_users.push_back(static_cast<int>(u));
    }
  } else {
    if (!v.contains("values")) throw ConfigError("sweep.values", "missing");
    s.values = number_list(v["values"], "sweep.values");
    if (s.variable != SweepVariable::rho_dB)
      for (double x : s.values)
        if (x < 1 || x != std::floor(x)) throw ConfigError("sweep.values", "expected positive integers");
  }
  if (v.contains("series")) {
    const auto& series = v["series"];
    if (!series.is_array()) throw ConfigError("sweep.series", "expected an array");
    for (std::size_t i = 0; i < series.size(); ++i) {
      const std::string f = "sweep.series[" + std::to_string(i) + "]";
      const auto& o = series[i];
      if (!o.is_object()) throw ConfigError(f, "expected an object");
      reject_unknown(o, f, {"M", "Q", "N_t", "N_r", "K", "rho_dB"});
      SeriesOverride so;
      if (o.contains("M")) so.M = as_count(o["M"], f + ".M");
      if (o.contains("Q")) so.Q = as_count(o["Q"], f + ".Q");
      if (o.contains("N_t")) so.Nt = as_count(o["N_t"], f + ".N_t");
      if (o.contains("N_r")) so.Nr = as_count(o["N_r"], f + ".N_r");
      if (o.contains("K")) so.K = as_count(o["K"], f + ".K");
      if (o.contains("rho_dB")) so.rho_dB = as_real(o["rho_dB"], f + ".rho_dB");
      s.series.push_back(so);
    }
  }
  if (v.contains("trials")) s.trials = as_u64(v["trials"], "sweep.trials");
  if (s.trials < 100) throw ConfigError("sweep.trials", "must be >= 100");
  return s;
}

json attenuation_json(const AttenuationSpec& a) {
  switch (a.kind) {
    case AttenuationSpec::Kind::scalar:
      return a.value;
    case AttenuationSpec::Kind::log_uniform:
      return {{"min_dB", a.min_dB},
              {"max_dB", a.max_dB},
              {"granularity", a.granularity == Granularity::per_user ? "per_user" : "per_link"}};
    case AttenuationSpec::Kind::csv:
      return {{"csv", a.path}};
  }
  return nullptr;
}

const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::K: return "K";
    case SweepVariable::clusters: return "clusters";
    case SweepVariable::rho_dB: return "rho_dB";
    case SweepVariable::Nt: return "N_t";
  }
  return "K";
}

}  // namespace

AttenuationProfile read_attenuation_csv(const std::string& path, const Dimensions& dims) {
  std::ifstream in(path);
  if (!in) throw ConfigError("attenuation", "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) ||
      detail::split_csv_line(line) != std::vector<std::string>{"n", "k", "m", "r", "gamma"})
    throw ConfigError("attenuation", "CSV header must be n,k,m,r,gamma");
  const std::size_t count = static_cast<std::size_t>(dims.M) * dims.K * dims.M * dims.Q;
  std::vector<double> values(count, 0.0);
  std::vector<char> seen(count, 0);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    const std::string where = "attenuation CSV row " + std::to_string(row);
    if (f.size() != 5) throw ConfigError("attenuation", where + ": expected 5 fields");
    long long n, k, m, r;
    double g;
    try {
      n = detail::parse_integer(f[0]);
      k = detail::parse_integer(f[1]);
      m = detail::parse_integer(f[2]);
      r = detail::parse_integer(f[3]);
      g = detail::parse_double(f[4]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("attenuation", where + ": " + e.what());
    }
    if (n < 0 || n >= dims.M || m < 0 || m >= dims.M || k < 0 || k >= dims.K || r < 0 ||
        r >= dims.Q)
      throw ConfigError("attenuation", where + ": index out of range");
    const std::size_t idx = ((static_cast<std::size_t>(n) * dims.K + k) * dims.M + m) * dims.Q + r;
    if (seen[idx]++) throw ConfigError("attenuation", where + ": duplicate entry");
    values[idx] = g;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw ConfigError("attenuation", "CSV misses entries for the configured (M, K, Q)");
  return AttenuationProfile::from_values(dims.M, dims.K, dims.Q, std::move(values));
}

AttenuationProfile AttenuationSpec::build(const Dimensions& dims, std::uint64_t seed) const {
  switch (kind) {
    case Kind::scalar:
      return AttenuationProfile::homogeneous(dims.M, dims.K, dims.Q, value);
    case Kind::log_uniform:
      return AttenuationProfile::log_uniform(dims.M, dims.K, dims.Q, min_dB, max_dB, granularity,
                                             seed);
    case Kind::csv:
      return read_attenuation_csv(path, dims);
  }
  throw std::logic_error("unknown attenuation kind");
}

std::uint64_t CalibrationSettings::resolved_samples(const Dimensions& dims) const noexcept {
  if (samples_per_user) return *samples_per_user;
  return std::max<std::uint64_t>(100000, 1000ull * static_cast<std::uint64_t>(dims.K) * dims.Nr);
}

bool CalibrationSettings::use_closed_form(const AttenuationSpec& attenuation) const noexcept {
  switch (method) {
    case Method::closed_form: return true;
    case Method::automatic: return attenuation.homogeneous();
    case Method::empirical: return false;
  }
  return false;
}

NetworkConfig ExperimentConfig::network(const Dimensions& d, double rho) const {
  return NetworkConfig::make(d, db_to_linear(rho), attenuation.build(d, seed), seed);
}

json ExperimentConfig::to_json() const {
  json j;
  j["M"] = dims.M;
  j["Q"] = dims.Q;
  j["N_t"] = dims.Nt;
  j["N_r"] = dims.Nr;
  j["K"] = dims.K;
  j["rho_dB"] = rho_dB;
  j["seed"] = seed;
  j["attenuation"] = attenuation_json(attenuation);
  json cal;
  cal["method"] = calibration.method == CalibrationSettings::Method::closed_form ? "closed_form"
                  : calibration.method == CalibrationSettings::Method::automatic ? "auto"
                                                                                 : "empirical";
  if (calibration.samples_per_user) cal["samples_per_user"] = *calibration.samples_per_user;
  cal["pool_identical"] = calibration.pool_identical;
  j["calibration"] = cal;
  json sw;
  sw["variable"] = variable_name(sweep.variable);
  sw["trials"] = sweep.trials;
  if (sweep.variable == SweepVariable::clusters) {
    json pairs = json::array();
    for (const auto& [m, q] : sweep.clusters) pairs.push_back({m, q});
    sw["clusters"] = pairs;
    sw["total_users"] = sweep.total_users;
  } else {
    sw["values"] = sweep.values;
  }
  json series = json::array();
  for (const auto& s : sweep.series) {
    json o = json::object();
    if (s.M) o["M"] = *s.M;
    if (s.Q) o["Q"] = *s.Q;
    if (s.Nt) o["N_t"] = *s.Nt;
    if (s.Nr) o["N_r"] = *s.Nr;
    if (s.K) o["K"] = *s.K;
    if (s.rho_dB) o["rho_dB"] = *s.rho_dB;
    series.push_back(o);
  }
  sw["series"] = series;
  j["sweep"] = sw;
  j["calibrate"] = {{"K", calibrate.K}, {"rho_dB", calibrate.rho_dB}};
  return j;
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& config) {
  const SweepSpec& s = config.sweep;
  std::vector<SeriesOverride> series = s.series;
  if (series.empty()) series.emplace_back();
  std::vector<SweepPoint> points;
  for (const auto& o : series) {
    Dimensions d = config.dims;
    if (o.M) d.M = *o.M;
    if (o.Q) d.Q = *o.Q;
    if (o.Nt) d.Nt = *o.Nt;
    if (o.Nr) d.Nr = *o.Nr;
    if (o.K) d.K = *o.K;
    const double rho = o.rho_dB.value_or(config.rho_dB);
    switch (s.variable) {
      case SweepVariable::K:
        for (double v : s.values) {
          Dimensions p = d;
          p.K = static_cast<int>(v);
          points.push_back({p, rho, s.trials});
        }
        break;
      case SweepVariable::Nt:
        for (double v : s.values) {
          Dimensions p = d;
          p.Nt = static_cast<int>(v);
          points.push_back({p, rho, s.trials});
        }
        break;
      case SweepVariable::rho_dB:
        for (double v : s.values) points.push_back({d, v, s.trials});
        break;
      case SweepVariable::clusters:
        for (const auto& [M, Q] : s.clusters)
          for (int users : s.total_users) {
            if (users % M != 0)
              throw ConfigError("sweep.total_users",
                                std::to_string(users) + " is not divisible by M=" + std::to_string(M));
            Dimensions p = d;
            p.M = M;
            p.Q = Q;
            p.K = users / M;
            points.push_back({p, rho, s.trials});
          }
        break;
    }
  }
  return points;
}

namespace {

ExperimentConfig parse_with_base(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  reject_unknown(doc, "", {"M", "Q", "N_t", "N_r", "K", "rho_dB", "rho", "seed", "attenuation",
                           "calibration", "sweep", "calibrate", "trials"});
  ExperimentConfig c;
  apply_dimension(doc, "", c.dims);
  c.rho_dB = parse_rho_dB(doc, "", c.rho_dB);
  if (doc.contains("seed")) c.seed = as_u64(doc["seed"], "seed");
  if (doc.contains("attenuation")) c.attenuation = parse_attenuation(doc["attenuation"], base_dir);
  if (doc.contains("calibration")) c.calibration = parse_calibration(doc["calibration"]);
  if (c.calibration.method == CalibrationSettings::Method::closed_form &&
      !c.attenuation.homogeneous())
    throw ConfigError("calibration.method", "closed_form needs a homogeneous (scalar) attenuation");
  if (doc.contains("sweep")) {
    if (doc.contains("trials")) throw ConfigError("trials", "give trials inside sweep");
    c.sweep = parse_sweep(doc["sweep"]);
  } else {
    c.sweep.values = {static_cast<double>(c.dims.K)};
    if (doc.contains("trials")) c.sweep.trials = as_u64(doc["trials"], "trials");
    if (c.sweep.trials < 100) throw ConfigError("trials", "must be >= 100");
  }
  if (doc.contains("calibrate")) {
    const auto& g = doc["calibrate"];
    if (!g.is_object()) throw ConfigError("calibrate", "expected an object");
    reject_unknown(g, "calibrate", {"K", "rho_dB"});
    if (g.contains("K"))
      for (double k : number_list(g["K"], "calibrate.K")) {
        if (k < 1 || k != std::floor(k)) throw ConfigError("calibrate.K", "expected positive integers");
        c.calibrate.K.push_back(static_cast<int>(k));
      }
    if (g.contains("rho_dB")) c.calibrate.rho_dB = number_list(g["rho_dB"], "calibrate.rho_dB");
  }
  if (c.calibrate.K.empty()) c.calibrate.K = {c.dims.K};
  if (c.calibrate.rho_dB.empty()) c.calibrate.rho_dB = {c.rho_dB};

  // Building each network checks its dimensions against the attenuation.
  (void)c.network();
  for (const auto& p : expand_sweep(c)) (void)c.network(p.dims, p.rho_dB);
  return c;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) { return parse_with_base(doc, ""); }

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_with_base(doc, std::filesystem::path(path).parent_path().string());
}

std::string config_hash(const json& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rbsched
