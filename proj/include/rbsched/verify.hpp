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
#include <string>
#include <vector>

#include <json.hpp>

namespace rbsched {

struct VerifyCheck {
  std::string name;
  double statistic = 0.0;
  double expected = 0.0;
  double threshold = 0.0;
  std::string comparison;  // how statistic is compared against threshold
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const noexcept;
  nlohmann::json to_json() const;
};

enum class Fault {
  none,
  swap_bound_cdfs,  // test S against F2 and T against F1
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int workers = 1;
  Fault fault = Fault::none;
};

/// Runs the invariant suites at fixed desk-scale parameters.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace rbsched
