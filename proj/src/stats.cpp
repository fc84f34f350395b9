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

#include "ifm/stats.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "ifm/errors.hpp"

namespace ifm {

double tvd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DimensionMismatch("distributions have " + std::to_string(p.size()) + " and " +
                                std::to_string(q.size()) + " outcomes");
    }
    double sp = 0;
    double sq = 0;
    double d = 0;
    for (std::size_t i = 0; i < p.size(); i++) {
        sp += p[i];
        sq += q[i];
        d += std::abs(p[i] - q[i]);
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
        throw ConfigError("tvd inputs must each sum to 1");
    }
    return 0.5 * d;
}

double chi_square_p_value(double statistic, int dof) {
    if (dof < 1) {
        throw DegenerateData("chi-square needs at least one degree of freedom");
    }
    if (statistic <= 0) {
        return 1.0;
    }
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("count vectors have " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()) + " cells");
    }
    double na = 0;
    double nb = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        na += static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]);
    }
    if (na <= 0 || nb <= 0) {
        throw DegenerateData("both samples need a positive total count");
    }
    double n = na + nb;
    ChiSquareResult r;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        double pooled = static_cast<double>(a[i]) + static_cast<double>(b[i]);
        if (pooled == 0) {
            continue;
        }
        cells++;
        double ea = na * pooled / n;
        double eb = nb * pooled / n;
        double da = static_cast<double>(a[i]) - ea;
        double db = static_cast<double>(b[i]) - eb;
        r.statistic += da * da / ea + db * db / eb;
    }
    if (cells < 2) {
        throw DegenerateData("fewer than 2 nonzero pooled cells");
    }
    r.degrees_of_freedom = cells - 1;
    r.p_value = chi_square_p_value(r.statistic, r.degrees_of_freedom);
    return r;
}

}  // namespace ifm
