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
#include <functional>
#include <span>
#include <vector>

namespace rbsched {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample stddev / sqrt(n)
};

/// Summed in index order, so the result does not depend on how the values
/// were produced.
MeanSe mean_se(std::span<const double> values);

/// sup_x |F_n(x) - F(x)| of the sample against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov survival function with the Stephens small-sample
/// correction; p-value of a one-sample KS distance d at sample size n.
double ks_p_value(double d, std::size_t n);

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit of integer counts against equal expected frequencies.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, int dof);

}  // namespace rbsched
