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
#include <string_view>
#include <vector>

namespace rbsched::detail {

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

// RFC-4180 field quoting when the field holds a comma, quote or line break.
std::string csv_field(std::string_view text);

// Splits one CSV record (no embedded line breaks) honouring quotes.
std::vector<std::string> split_csv_line(std::string_view line);

// Strict numeric parsing of a whole field; throws std::invalid_argument.
double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

}  // namespace rbsched::detail
