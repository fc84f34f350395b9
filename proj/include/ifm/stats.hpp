// Copyright 2026 The ifm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>

namespace ifm {

/// Total variation distance 1/2 sum |p_i - q_i|. Throws DimensionMismatch on
/// different lengths and ConfigError if either input does not sum to one
/// within 1e-9.
double tvd(std::span<const double> p, std::span<const double> q);

struct ChiSquareResult {
    double statistic = 0;
    double p_value = 1;
    int degrees_of_freedom = 0;
};

/// Two-sample chi-square homogeneity test on count vectors over the same
/// outcome space. Cells whose pooled count is zero are dropped;
/// dof = remaining cells - 1. Throws DegenerateData with fewer than two
/// nonzero pooled cells.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Upper tail P(X >= statistic) for X ~ chi-square(dof).
double chi_square_p_value(double statistic, int dof);

}  // namespace ifm
