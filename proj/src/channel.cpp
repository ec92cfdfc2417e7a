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

#include "rbsched/channel.hpp"

namespace rbsched {

ChannelRealization::ChannelRealization(const Dimensions& dims, std::vector<Complex> channels,
                                       std::vector<Eigen::MatrixXcd> beams)
    : dims_(dims), channels_(std::move(channels)), beams_(std::move(beams)) {
  if (channels_.size() != channel_count() * static_cast<std::size_t>(dims_.Nr) * dims_.Nt)
    throw std::invalid_argument("channel buffer does not match dimensions");
  if (beams_.size() != static_cast<std::size_t>(dims_.M) * dims_.Q)
    throw std::invalid_argument("expected one beam matrix per base-station");
}

Eigen::MatrixXcd sample_beamformers(int Nt, Stream& stream) {
  if (Nt < 1) throw std::invalid_argument("N_t must be >= 1");
  ComplexNormal normal;
  Eigen::MatrixXcd g(Nt, Nt);
  for (;;) {
    for (int c = 0; c < Nt; ++c)
      for (int r = 0; r < Nt; ++r) g(r, c) = normal(stream);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd& packed = qr.matrixQR();
    Eigen::VectorXcd phase(Nt);
    bool degenerate = false;
    for (int i = 0; i < Nt; ++i) {
      const double mag = std::abs(packed(i, i));
      if (mag < 1e-12) {
        degenerate = true;
        break;
      }
      phase(i) = packed(i, i) / mag;
    }
    if (degenerate) continue;
    Eigen::MatrixXcd q = qr.householderQ();
    return q * phase.asDiagonal();
  }
}

ChannelRealization sample_channels(const Dimensions& dims, Stream& stream) {
  std::vector<Eigen::MatrixXcd> beams;
  beams.reserve(static_cast<std::size_t>(dims.M) * dims.Q);
  for (int m = 0; m < dims.M; ++m)
    for (int r = 0; r < dims.Q; ++r) beams.push_back(sample_beamformers(dims.Nt, stream));

  const std::size_t count = static_cast<std::size_t>(dims.M) * dims.K * dims.M * dims.Q *
                            dims.Nr * dims.Nt;
  std::vector<Complex> channels(count);
  ComplexNormal normal;
  for (auto& h : channels) h = normal(stream);
  return ChannelRealization(dims, std::move(channels), std::move(beams));
}

ChannelRealization sample_channels(const NetworkConfig& config, std::uint64_t trial) {
  Stream stream = RngPolicy(config.seed).stream(StreamDomain::channel, trial);
  return sample_channels(config.dims, stream);
}

}  // namespace rbsched
