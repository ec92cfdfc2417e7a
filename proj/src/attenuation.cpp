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
#include <random>

#include "rbsched/config.hpp"
#include "rbsched/rng.hpp"

namespace rbsched {

namespace {

std::size_t entry_count(int M, int K, int Q) {
  return static_cast<std::size_t>(M) * K * M * Q;
}

}  // namespace

AttenuationProfile AttenuationProfile::homogeneous(int M, int K, int Q, double value) {
  if (M < 1 || K < 1 || Q < 1) throw ConfigError("attenuation", "dimensions must be >= 1");
  return AttenuationProfile(M, K, Q, std::vector<double>(entry_count(M, K, Q), value));
}

AttenuationProfile AttenuationProfile::log_uniform(int M, int K, int Q, double min_dB,
                                                   double max_dB, Granularity granularity,
                                                   std::uint64_t seed) {
  if (M < 1 || K < 1 || Q < 1) throw ConfigError("attenuation", "dimensions must be >= 1");
  if (!std::isfinite(min_dB) || !std::isfinite(max_dB) || min_dB > max_dB)
    throw ConfigError("attenuation.min_dB", "need finite min_dB <= max_dB");

  Stream stream = RngPolicy(seed).stream(StreamDomain::attenuation, 0);
  std::uniform_real_distribution<double> dB(min_dB, max_dB);
  std::vector<double> values(entry_count(M, K, Q));
  std::size_t idx = 0;
  for (int n = 0; n < M; ++n) {
    for (int k = 0; k < K; ++k) {
      const double user_level = db_to_linear(dB(stream));
      for (int m = 0; m < M; ++m)
        for (int r = 0; r < Q; ++r)
          values[idx++] =
              granularity == Granularity::per_user ? user_level : db_to_linear(dB(stream));
    }
  }
  return AttenuationProfile(M, K, Q, std::move(values));
}

AttenuationProfile AttenuationProfile::from_values(int M, int K, int Q, std::vector<double> values) {
  AttenuationProfile p(M, K, Q, std::move(values));
  p.validate(Dimensions{M, Q, 1, 1, K});
  return p;
}

bool AttenuationProfile::is_homogeneous() const noexcept {
  if (values_.empty()) return true;
  return std::all_of(values_.begin(), values_.end(),
                     [first = values_.front()](double v) { return v == first; });
}

AttenuationExtremes AttenuationProfile::extremes(int n) const {
  if (n < 0 || n >= M_) throw std::out_of_range("super-cell index out of range");
  AttenuationExtremes e{INFINITY, 0.0, INFINITY, 0.0};
  for (int k = 0; k < K_; ++k) {
    for (int m = 0; m < M_; ++m) {
      for (int r = 0; r < Q_; ++r) {
        const double g = (*this)(n, k, m, r);
        e.zeta_min = std::min(e.zeta_min, g);
        e.zeta_max = std::max(e.zeta_max, g);
        if (m == n) {
          e.eta_min = std::min(e.eta_min, g);
          e.eta_max = std::max(e.eta_max, g);
        }
      }
    }
  }
  return e;
}

void AttenuationProfile::validate(const Dimensions& dims) const {
  if (M_ != dims.M || K_ != dims.K || Q_ != dims.Q)
    throw ConfigError("attenuation", "shape does not match (M, K, Q)");
  if (values_.size() != entry_count(M_, K_, Q_))
    throw ConfigError("attenuation", "expected M*K*M*Q entries");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("attenuation", "entries must be positive and finite");
}

}  // namespace rbsched
