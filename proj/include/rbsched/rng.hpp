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

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace rbsched {

using Stream = std::mt19937_64;

/// Independent purposes for which random streams are derived. Keeping them
/// apart means e.g. the selection draws never shift the channel draws.
enum class StreamDomain : std::uint32_t {
  channel = 1,
  selection = 2,
  calibration = 3,
  attenuation = 4,
  verification = 5,
  integral = 6,
};

/// Derives reproducible per-trial streams from a master seed. The stream for
/// (domain, index, sub) is a pure function of those values, so trials can run
/// in any order on any number of workers.
class RngPolicy {
 public:
  explicit RngPolicy(std::uint64_t master_seed) noexcept : master_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_; }
  Stream stream(StreamDomain domain, std::uint64_t index, std::uint64_t sub = 0) const;

 private:
  std::uint64_t master_;
};

/// CN(0, 1): real and imaginary parts each N(0, 1/2).
class ComplexNormal {
 public:
  std::complex<double> operator()(Stream& s) {
    const double re = dist_(s);
    const double im = dist_(s);
    return {re, im};
  }

 private:
  std::normal_distribution<double> dist_{0.0, 0.70710678118654752440};
};

}  // namespace rbsched
