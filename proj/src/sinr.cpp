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
#include <ostream>
#include <stdexcept>

#include "csv.hpp"
#include "rbsched/sinr.hpp"

namespace rbsched {

SinrTable::SinrTable(const Dimensions& dims)
    : dims_(dims),
      values_(static_cast<std::size_t>(dims.M) * dims.K * dims.Nr * dims.Q * dims.Nt, 0.0) {}

namespace {

// One pass over every beam of the network per (n, k): accumulate the
// weighted and unweighted received power on each antenna, remember the
// own-cell terms, then subtract the own term per candidate beam.
void fill_tables(const NetworkConfig& cfg, const ChannelRealization& ch, SinrTable* sinr,
                 BoundTables* bounds) {
  const Dimensions& d = cfg.dims;
  const int own_beams = d.Q * d.Nt;
  const double noise = 1.0 / cfg.rho;

  std::vector<double> weighted(d.Nr), unweighted(d.Nr);
  std::vector<double> own(static_cast<std::size_t>(d.Nr) * own_beams);
  Eigen::MatrixXcd projected(d.Nr, d.Nt);

  for (int n = 0; n < d.M; ++n) {
    double lower_ratio = 0, lower_noise = 0, upper_ratio = 0, upper_noise = 0;
    if (bounds) {
      const AttenuationExtremes e = cfg.attenuation.extremes(n);
      lower_ratio = e.zeta_max / e.eta_min;
      lower_noise = 1.0 / (cfg.rho * e.eta_min);
      upper_ratio = e.zeta_min / e.eta_max;
      upper_noise = 1.0 / (cfg.rho * e.eta_max);
    }
    for (int k = 0; k < d.K; ++k) {
      std::fill(weighted.begin(), weighted.end(), 0.0);
      std::fill(unweighted.begin(), unweighted.end(), 0.0);
      for (int m = 0; m < d.M; ++m) {
        for (int r = 0; r < d.Q; ++r) {
          projected.noalias() = ch.channel(n, k, m, r) * ch.beams(m, r);
          const double g = cfg.attenuation(n, k, m, r);
          for (int l = 0; l < d.Nt; ++l) {
            for (int i = 0; i < d.Nr; ++i) {
              const double p = std::norm(projected(i, l));
              weighted[i] += g * p;
              unweighted[i] += p;
              if (m == n) own[static_cast<std::size_t>(i) * own_beams + r * d.Nt + l] = p;
            }
          }
        }
      }
      for (int i = 0; i < d.Nr; ++i) {
        for (int r = 0; r < d.Q; ++r) {
          const double g_own = cfg.attenuation(n, k, n, r);
          for (int l = 0; l < d.Nt; ++l) {
            const double p = own[static_cast<std::size_t>(i) * own_beams + r * d.Nt + l];
            if (sinr) {
              const double signal = g_own * p;
              const double interference = std::max(weighted[i] - signal, 0.0);
              sinr->at(n, k, i, r, l) = signal / (interference + noise);
            }
            if (bounds) {
              const double interference = std::max(unweighted[i] - p, 0.0);
              bounds->lower.at(n, k, i, r, l) = p / (lower_ratio * interference + lower_noise);
              bounds->upper.at(n, k, i, r, l) = p / (upper_ratio * interference + upper_noise);
            }
          }
        }
      }
    }
  }
}

void check_dims(const NetworkConfig& cfg, const ChannelRealization& ch) {
  if (!(cfg.dims == ch.dims()))
    throw std::invalid_argument("channel realization does not match the config dimensions");
}

}  // namespace

SinrTable compute_sinr_table(const NetworkConfig& config, const ChannelRealization& channels) {
  check_dims(config, channels);
  SinrTable table(config.dims);
  fill_tables(config, channels, &table, nullptr);
  return table;
}

BoundTables compute_bounds(const NetworkConfig& config, const ChannelRealization& channels) {
  check_dims(config, channels);
  BoundTables b{SinrTable(config.dims), SinrTable(config.dims)};
  fill_tables(config, channels, nullptr, &b);
  return b;
}

SinrWithBounds compute_sinr_with_bounds(const NetworkConfig& config,
                                        const ChannelRealization& channels) {
  check_dims(config, channels);
  SinrWithBounds out{SinrTable(config.dims),
                     BoundTables{SinrTable(config.dims), SinrTable(config.dims)}};
  fill_tables(config, channels, &out.sinr, &out.bounds);
  return out;
}

ClosedFormCdf::ClosedFormCdf(Kind kind, double rho, int total_beams,
                             const AttenuationExtremes& extremes)
    : kind_(kind), rho_(rho), total_beams_(total_beams), extremes_(extremes) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (total_beams < 1) throw std::invalid_argument("total_beams must be >= 1");
  if (kind == Kind::lower) {
    scale_ = rho * extremes.eta_min;
    ratio_ = extremes.zeta_max / extremes.eta_min;
  } else {
    scale_ = rho * extremes.eta_max;
    ratio_ = extremes.zeta_min / extremes.eta_max;
  }
}

ClosedFormCdf ClosedFormCdf::for_cell(Kind kind, const NetworkConfig& config, int n) {
  return ClosedFormCdf(kind, config.rho, config.dims.total_beams(),
                       config.attenuation.extremes(n));
}

double ClosedFormCdf::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("CDF argument must be >= 0");
  if (std::isinf(x)) return 1.0;
  const double log_survival = -x / scale_ - (total_beams_ - 1) * std::log1p(ratio_ * x);
  return -std::expm1(log_survival);
}

ClosedFormCdf ClosedFormCdf::swapped() const {
  return ClosedFormCdf(kind_ == Kind::lower ? Kind::upper : Kind::lower, rho_, total_beams_,
                       extremes_);
}

void write_sinr_csv(std::ostream& out, const SinrTable& sinr, const BoundTables* bounds) {
  using detail::format_double;
  const Dimensions& d = sinr.dims();
  out << "n,k,i,r,l,sinr" << (bounds ? ",S,T" : "") << '\n';
  for (int n = 0; n < d.M; ++n)
    for (int k = 0; k < d.K; ++k)
      for (int i = 0; i < d.Nr; ++i)
        for (int r = 0; r < d.Q; ++r)
          for (int l = 0; l < d.Nt; ++l) {
            out << n << ',' << k << ',' << i << ',' << r << ',' << l << ','
                << format_double(sinr.at(n, k, i, r, l));
            if (bounds)
              out << ',' << format_double(bounds->lower.at(n, k, i, r, l)) << ','
                  << format_double(bounds->upper.at(n, k, i, r, l));
            out << '\n';
          }
}

}  // namespace rbsched
