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

#include <iosfwd>
#include <span>
#include <vector>

#include "rbsched/channel.hpp"
#include "rbsched/config.hpp"

namespace rbsched {

/// Values indexed by (n, k, i, r, l): super-cell, user, receive antenna,
/// serving base-station and beam. The (r, l) block of one (n, k, i) is
/// contiguous, r-major.
class SinrTable {
 public:
  SinrTable() = default;
  explicit SinrTable(const Dimensions& dims);

  const Dimensions& dims() const noexcept { return dims_; }

  double& at(int n, int k, int i, int r, int l) noexcept { return values_[index(n, k, i, r, l)]; }
  double at(int n, int k, int i, int r, int l) const noexcept {
    return values_[index(n, k, i, r, l)];
  }

  /// All Q * N_t entries seen by antenna i of user k in super-cell n.
  std::span<const double> antenna(int n, int k, int i) const noexcept {
    return {values_.data() + index(n, k, i, 0, 0), static_cast<std::size_t>(dims_.Q * dims_.Nt)};
  }
  std::span<double> antenna(int n, int k, int i) noexcept {
    return {values_.data() + index(n, k, i, 0, 0), static_cast<std::size_t>(dims_.Q * dims_.Nt)};
  }
  /// Every entry of super-cell n.
  std::span<const double> cell(int n) const noexcept {
    const std::size_t len = static_cast<std::size_t>(dims_.K) * dims_.Nr * dims_.Q * dims_.Nt;
    return {values_.data() + n * len, len};
  }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t index(int n, int k, int i, int r, int l) const noexcept {
    return (((static_cast<std::size_t>(n) * dims_.K + k) * dims_.Nr + i) * dims_.Q + r) *
               dims_.Nt +
           l;
  }

  Dimensions dims_;
  std::vector<double> values_;
};

/// Analytic lower (S) and upper (T) surrogates of every SINR entry.
struct BoundTables {
  SinrTable lower;
  SinrTable upper;
};

/// Detection SINR of every (user, antenna) for every beam of its own
/// super-cell, with interference from all M * Q * N_t beams in the network.
SinrTable compute_sinr_table(const NetworkConfig& config, const ChannelRealization& channels);

/// S and T, built from the super-cell extremes of the attenuation profile.
/// S <= SINR <= T holds entrywise.
BoundTables compute_bounds(const NetworkConfig& config, const ChannelRealization& channels);

/// SINR and its bounds in one pass.
struct SinrWithBounds {
  SinrTable sinr;
  BoundTables bounds;
};
SinrWithBounds compute_sinr_with_bounds(const NetworkConfig& config,
                                        const ChannelRealization& channels);

/// Closed-form CDFs of the lower (F1) and upper (F2) surrogates:
///   F(x) = 1 - exp(-x / (rho * eta)) / (ratio * x + 1)^(B - 1)
/// with B = M * Q * N_t, (eta, ratio) = (eta_min, zeta_max / eta_min) for F1
/// and (eta_max, zeta_min / eta_max) for F2. Under a homogeneous profile both
/// coincide with the exact SINR CDF.
class ClosedFormCdf {
 public:
  enum class Kind { lower, upper };

  ClosedFormCdf(Kind kind, double rho, int total_beams, const AttenuationExtremes& extremes);
  static ClosedFormCdf for_cell(Kind kind, const NetworkConfig& config, int n);

  Kind kind() const noexcept { return kind_; }
  /// Throws std::domain_error for x < 0 or NaN.
  double operator()(double x) const;
  /// Same parameters, other kind (fault injection / negative controls).
  ClosedFormCdf swapped() const;

 private:
  Kind kind_;
  double rho_;
  int total_beams_;
  AttenuationExtremes extremes_;
  double scale_;  // rho * eta
  double ratio_;  // zeta / eta
};

/// CSV dump, one row per (n, k, i, r, l): columns n,k,i,r,l,sinr[,S,T].
void write_sinr_csv(std::ostream& out, const SinrTable& sinr, const BoundTables* bounds = nullptr);

}  // namespace rbsched
