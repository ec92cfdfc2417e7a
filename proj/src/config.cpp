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

#include <bit>
#include <cmath>

#include "rbsched/config.hpp"

namespace rbsched {

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

int feedback_bits_per_message(const Dimensions& dims) noexcept {
  const auto beams = static_cast<unsigned>(dims.Q * dims.Nt);
  // ceil(log2(b)) for b >= 1
  return beams <= 1 ? 0 : std::bit_width(beams - 1);
}

void NetworkConfig::validate() const {
  if (dims.M < 1) throw ConfigError("M", "must be >= 1");
  if (dims.Q < 1) throw ConfigError("Q", "must be >= 1");
  if (dims.Nt < 1) throw ConfigError("N_t", "must be >= 1");
  if (dims.Nr < 1) throw ConfigError("N_r", "must be >= 1");
  if (dims.K < 1) throw ConfigError("K", "must be >= 1");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ConfigError("rho", "must be positive and finite");
  attenuation.validate(dims);
}

NetworkConfig NetworkConfig::make(const Dimensions& dims, double rho,
                                  AttenuationProfile attenuation, std::uint64_t seed) {
  NetworkConfig cfg{dims, rho, std::move(attenuation), seed};
  cfg.validate();
  return cfg;
}

NetworkConfig NetworkConfig::homogeneous(const Dimensions& dims, double rho, std::uint64_t seed) {
  if (dims.M < 1 || dims.K < 1 || dims.Q < 1) {
    NetworkConfig probe{dims, rho, {}, seed};
    probe.validate();  // throws with the field name
  }
  return make(dims, rho, AttenuationProfile::homogeneous(dims.M, dims.K, dims.Q), seed);
}

}  // namespace rbsched
