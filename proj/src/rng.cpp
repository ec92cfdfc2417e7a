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

#include "rbsched/rng.hpp"

namespace rbsched {

Stream RngPolicy::stream(StreamDomain domain, std::uint64_t index, std::uint64_t sub) const {
  // seed_seq mixes every word into the full 19968-bit engine state.
  std::seed_seq seq{static_cast<std::uint32_t>(master_),
                    static_cast<std::uint32_t>(master_ >> 32),
                    static_cast<std::uint32_t>(domain),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(sub),
                    static_cast<std::uint32_t>(sub >> 32)};
  return Stream(seq);
}

}  // namespace rbsched
