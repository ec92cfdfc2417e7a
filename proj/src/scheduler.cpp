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
#include <limits>
#include <random>
#include <stdexcept>

#include "rbsched/channel.hpp"
#include "rbsched/scheduler.hpp"

namespace rbsched {

CandidateSets::CandidateSets(const Dimensions& dims)
    : dims_(dims), sets_(static_cast<std::size_t>(dims.M) * dims.Q * dims.Nt) {}

bool CandidateSets::disjoint() const {
  std::vector<char> seen(static_cast<std::size_t>(dims_.K) * dims_.Nr);
  for (int n = 0; n < dims_.M; ++n) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < dims_.Q; ++r)
      for (int l = 0; l < dims_.Nt; ++l)
        for (const UserAntenna& u : at(n, r, l))
          if (seen[static_cast<std::size_t>(u.k) * dims_.Nr + u.i]++) return false;
  }
  return true;
}

std::size_t CandidateSets::total_members() const noexcept {
  std::size_t total = 0;
  for (const auto& s : sets_) total += s.size();
  return total;
}

namespace {

double normalized(double sinr, double beta) {
  if (beta > 0.0) return sinr / beta;
  return std::numeric_limits<double>::infinity();
}

BeamChoice best_in_view(const CellView& view, int k, int i) {
  const Dimensions& d = view.dims;
  const std::size_t base =
      (static_cast<std::size_t>(k) * d.Nr + i) * static_cast<std::size_t>(d.Q * d.Nt);
  BeamChoice best{0, 0, -std::numeric_limits<double>::infinity()};
  for (int r = 0; r < d.Q; ++r) {
    const double beta = view.beta[static_cast<std::size_t>(k) * d.Q + r];
    for (int l = 0; l < d.Nt; ++l) {
      const double v = normalized(view.sinr[base + static_cast<std::size_t>(r) * d.Nt + l], beta);
      if (v > best.value) best = {r, l, v};
    }
  }
  return best;
}

void check_tables(const SinrTable& sinr, const BetaTable& beta) {
  if (!beta.matches(sinr.dims()))
    throw std::invalid_argument("beta table does not match the SINR table dimensions");
}

}  // namespace

CellView cell_view(const SinrTable& sinr, const BetaTable& beta, int n) {
  check_tables(sinr, beta);
  const Dimensions& d = sinr.dims();
  if (n < 0 || n >= d.M) throw std::out_of_range("super-cell index out of range");
  const std::size_t len = static_cast<std::size_t>(d.K) * d.Q;
  return {n, d, sinr.cell(n), std::span<const double>(beta.values().data() + n * len, len)};
}

BeamChoice best_beam(const SinrTable& sinr, const BetaTable& beta, int n, int k, int i) {
  const CellView view = cell_view(sinr, beta, n);
  if (k < 0 || k >= view.dims.K || i < 0 || i >= view.dims.Nr)
    throw std::out_of_range("user or antenna index out of range");
  return best_in_view(view, k, i);
}

void feedback_cell(const CellView& view, std::vector<FeedbackMessage>& messages,
                   CandidateSets& sets) {
  const Dimensions& d = view.dims;
  const int bits = feedback_bits_per_message(d);
  for (int k = 0; k < d.K; ++k) {
    for (int i = 0; i < d.Nr; ++i) {
      const BeamChoice best = best_in_view(view, k, i);
      if (best.value >= 1.0) {
        messages.push_back({view.n, k, i, best.r, best.l, bits});
        sets.at(view.n, best.r, best.l).push_back({k, i});
      }
    }
  }
}

FeedbackRound feedback_round(const SinrTable& sinr, const BetaTable& beta,
                             const NetworkConfig& config) {
  check_tables(sinr, beta);
  FeedbackRound round{{}, CandidateSets(config.dims)};
  for (int n = 0; n < config.dims.M; ++n)
    feedback_cell(cell_view(sinr, beta, n), round.messages, round.sets);
  return round;
}

namespace {

ScheduleOutcome empty_outcome(const Dimensions& d) {
  ScheduleOutcome out;
  out.dims = d;
  out.beams.resize(static_cast<std::size_t>(d.M) * d.Q * d.Nt);
  out.feedback_bits.assign(d.M, 0);
  out.feedback_messages.assign(d.M, 0);
  out.candidates.assign(d.M, 0);
  return out;
}

}  // namespace

void select_users_cell(const CandidateSets& sets, const SinrTable& sinr, int n, Stream& stream,
                       ScheduleOutcome& outcome) {
  const Dimensions& d = sets.dims();
  for (int r = 0; r < d.Q; ++r) {
    for (int l = 0; l < d.Nt; ++l) {
      const auto& set = sets.at(n, r, l);
      BeamAssignment& slot = outcome.beam(n, r, l);
      if (set.empty()) {
        slot = {};
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
      const UserAntenna u = set[pick(stream)];
      const double s = sinr.at(n, u.k, u.i, r, l);
      slot = {u, s, std::log2(1.0 + s)};
    }
  }
}

ScheduleOutcome select_users(const CandidateSets& sets, const SinrTable& sinr, Stream& stream) {
  if (!(sets.dims() == sinr.dims()))
    throw std::invalid_argument("candidate sets do not match the SINR table dimensions");
  ScheduleOutcome out = empty_outcome(sets.dims());
  out.sets_disjoint = sets.disjoint();
  for (int n = 0; n < sets.dims().M; ++n) select_users_cell(sets, sinr, n, stream, out);
  return out;
}

ScheduleOutcome run_round(const NetworkConfig& config, const BetaTable& beta, std::uint64_t trial,
                          const RoundOptions& options) {
  const Dimensions& d = config.dims;
  if (!beta.matches(d)) throw std::invalid_argument("beta table does not match the config");
  SinrTable sinr = compute_sinr_table(config, sample_channels(config, trial));

  ScheduleOutcome out = empty_outcome(d);
  const RngPolicy policy(config.seed);
  CandidateSets sets(d);
  std::vector<FeedbackMessage> messages;
  for (int n = 0; n < d.M; ++n) {
    messages.clear();
    feedback_cell(cell_view(sinr, beta, n), messages, sets);
    for (const auto& m : messages) out.feedback_bits[n] += m.bits;
    out.feedback_messages[n] = static_cast<int>(messages.size());
    out.candidates[n] = messages.size();
    // One selection stream per super-cell keeps cells independent of each other.
    Stream stream = policy.stream(StreamDomain::selection, trial, static_cast<std::uint64_t>(n));
    select_users_cell(sets, sinr, n, stream, out);
    if (options.messages)
      options.messages->insert(options.messages->end(), messages.begin(), messages.end());
  }
  out.sets_disjoint = sets.disjoint();
  if (options.keep_sinr) out.debug_sinr = std::move(sinr);
  return out;
}

}  // namespace rbsched
