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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbsched/calibration.hpp"
#include "rbsched/config.hpp"
#include "rbsched/rng.hpp"
#include "rbsched/sinr.hpp"

namespace rbsched {

/// A receive antenna of a user; with N_r > 1 each antenna competes as a
/// separate virtual user.
struct UserAntenna {
  int k = 0;
  int i = 0;
  bool operator==(const UserAntenna&) const = default;
};

struct BeamChoice {
  int r = 0;
  int l = 0;
  double value = 0.0;  // SINR / beta of the chosen beam
};

struct FeedbackMessage {
  int n = 0;
  int k = 0;
  int i = 0;
  int r = 0;
  int l = 0;
  int bits = 0;
};

/// H[n][r][l]: (user, antenna) pairs that declared beam (r, l) of super-cell n.
class CandidateSets {
 public:
  CandidateSets() = default;
  explicit CandidateSets(const Dimensions& dims);

  const Dimensions& dims() const noexcept { return dims_; }
  std::vector<UserAntenna>& at(int n, int r, int l) { return sets_[index(n, r, l)]; }
  const std::vector<UserAntenna>& at(int n, int r, int l) const { return sets_[index(n, r, l)]; }

  /// No (user, antenna) pair appears in two sets of the same super-cell.
  bool disjoint() const;
  std::size_t total_members() const noexcept;

 private:
  std::size_t index(int n, int r, int l) const noexcept {
    return (static_cast<std::size_t>(n) * dims_.Q + r) * dims_.Nt + l;
  }

  Dimensions dims_;
  std::vector<std::vector<UserAntenna>> sets_;
};

struct FeedbackRound {
  std::vector<FeedbackMessage> messages;
  CandidateSets sets;
};

struct BeamAssignment {
  std::optional<UserAntenna> user;  // empty: idle beam
  double sinr = 0.0;
  double rate = 0.0;  // log2(1 + sinr), 0 when idle
};

struct ScheduleOutcome {
  Dimensions dims;
  std::vector<BeamAssignment> beams;     // indexed (n, r, l)
  std::vector<int> feedback_bits;        // per super-cell
  std::vector<int> feedback_messages;    // per super-cell
  std::vector<std::size_t> candidates;   // per super-cell, total candidate-set size
  bool sets_disjoint = true;             // checked on the round's candidate sets
  std::optional<SinrTable> debug_sinr;   // filled when requested

  const BeamAssignment& beam(int n, int r, int l) const {
    return beams[(static_cast<std::size_t>(n) * dims.Q + r) * dims.Nt + l];
  }
  BeamAssignment& beam(int n, int r, int l) {
    return beams[(static_cast<std::size_t>(n) * dims.Q + r) * dims.Nt + l];
  }
};

/// Argmax over (r, l) of SINR / beta[n][k][r]; ties go to the lowest (r, l).
BeamChoice best_beam(const SinrTable& sinr, const BetaTable& beta, int n, int k, int i);

/// The super-cell local inputs of one feedback round.
struct CellView {
  int n = 0;
  Dimensions dims;
  std::span<const double> sinr;  // the (k, i, r, l) block of super-cell n
  std::span<const double> beta;  // the (k, r) block of super-cell n
};

CellView cell_view(const SinrTable& sinr, const BetaTable& beta, int n);

/// Feedback decisions of one super-cell; sees nothing outside `view`.
void feedback_cell(const CellView& view, std::vector<FeedbackMessage>& messages,
                   CandidateSets& sets);

/// Runs feedback_cell on every super-cell.
FeedbackRound feedback_round(const SinrTable& sinr, const BetaTable& beta,
                             const NetworkConfig& config);

/// Uniform pick from each nonempty candidate set of super-cell n.
void select_users_cell(const CandidateSets& sets, const SinrTable& sinr, int n, Stream& stream,
                       ScheduleOutcome& outcome);

/// Uniform pick from every nonempty candidate set; empty sets leave the beam idle.
ScheduleOutcome select_users(const CandidateSets& sets, const SinrTable& sinr, Stream& stream);

struct RoundOptions {
  bool keep_sinr = false;
  /// Messages of the round are appended here when non-null.
  std::vector<FeedbackMessage>* messages = nullptr;
};

/// Sample channels for `trial`, compute SINRs, run feedback and selection.
ScheduleOutcome run_round(const NetworkConfig& config, const BetaTable& beta,
                          std::uint64_t trial, const RoundOptions& options = {});

}  // namespace rbsched
