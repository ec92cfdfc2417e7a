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
#include <vector>

#include <Eigen/Dense>

#include "rbsched/config.hpp"
#include "rbsched/rng.hpp"

namespace rbsched {

using Complex = std::complex<double>;

/// One coherence block: every channel matrix H[n][k][m][r] (N_r x N_t, stored
/// column-major in one contiguous buffer) and the N_t x N_t beam matrix of
/// each base-station, whose columns are the beamforming vectors.
class ChannelRealization {
 public:
  ChannelRealization(const Dimensions& dims, std::vector<Complex> channels,
                     std::vector<Eigen::MatrixXcd> beams);

  const Dimensions& dims() const noexcept { return dims_; }

  /// Channel from base-station r of super-cell m to user k of super-cell n.
  Eigen::Map<const Eigen::MatrixXcd> channel(int n, int k, int m, int r) const noexcept {
    return {channels_.data() + offset(n, k, m, r), dims_.Nr, dims_.Nt};
  }
  const Complex* channel_data(int n, int k, int m, int r) const noexcept {
    return channels_.data() + offset(n, k, m, r);
  }
  const Eigen::MatrixXcd& beams(int m, int r) const noexcept {
    return beams_[static_cast<std::size_t>(m) * dims_.Q + r];
  }

  std::size_t channel_count() const noexcept {
    return static_cast<std::size_t>(dims_.M) * dims_.K * dims_.M * dims_.Q;
  }
  const std::vector<Complex>& raw_channels() const noexcept { return channels_; }

 private:
  std::size_t offset(int n, int k, int m, int r) const noexcept {
    const std::size_t idx =
        ((static_cast<std::size_t>(n) * dims_.K + k) * dims_.M + m) * dims_.Q + r;
    return idx * static_cast<std::size_t>(dims_.Nr) * dims_.Nt;
  }

  Dimensions dims_;
  std::vector<Complex> channels_;
  std::vector<Eigen::MatrixXcd> beams_;
};

/// Haar-distributed N_t x N_t unitary: QR of an i.i.d. CN(0,1) matrix with the
/// phases of R's diagonal folded into Q. Rank-deficient draws are resampled.
Eigen::MatrixXcd sample_beamformers(int Nt, Stream& stream);

/// Deterministic in (config.seed, trial).
ChannelRealization sample_channels(const NetworkConfig& config, std::uint64_t trial);

/// Same, drawing from an explicit stream (used by calibration).
ChannelRealization sample_channels(const Dimensions& dims, Stream& stream);

}  // namespace rbsched
