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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ifm/errors.hpp"
#include "ifm/experiments.hpp"
#include "ifm/stats.hpp"

namespace ifm {
namespace {

TEST(Tvd, Examples) {
    std::array<double, 3> a{0, 0.5, 0.5};
    std::array<double, 3> b{0.25, 0.25, 0.5};
    EXPECT_EQ(tvd(a, a), 0);
    EXPECT_NEAR(tvd(a, b), 0.25, 1e-15);
    std::array<double, 2> x{1, 0};
    std::array<double, 2> y{0, 1};
    EXPECT_EQ(tvd(x, y), 1);
}

TEST(Tvd, Errors) {
    std::array<double, 3> a{0, 0.5, 0.5};
    std::array<double, 2> b{0.5, 0.5};
    EXPECT_THROW(tvd(a, b), DimensionMismatch);
    std::array<double, 2> c{0.5, 0.6};
    EXPECT_THROW(tvd(b, c), ConfigError);
}

TEST(Property, TvdIsAMetric) {
    std::mt19937_64 rng(31);
    std::gamma_distribution<double> g(1.0);
    auto draw = [&] {
        std::array<double, 4> p;
        double s = 0;
        for (auto &v : p) {
            v = g(rng);
            s += v;
        }
        for (auto &v : p) {
            v /= s;
        }
        return p;
    };
    for (int i = 0; i < 1000; i++) {
        auto p = draw();
        auto q = draw();
        auto r = draw();
        EXPECT_NEAR(tvd(p, q), tvd(q, p), 1e-15);
        EXPECT_EQ(tvd(p, p), 0);
        EXPECT_GT(tvd(p, q), 0);
        EXPECT_LE(tvd(p, r), tvd(p, q) + tvd(q, r) + 1e-15);
        EXPECT_LE(tvd(p, q), 1);
    }
}

// Direct evaluation of the pooled-expectation formula.
double chi_square_oracle(const std::vector<double> &a, const std::vector<double> &b) {
    double na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        na += a[i];
        nb += b[i];
    }
    double stat = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        double pooled = (a[i] + b[i]) / (na + nb);
        if (pooled == 0) continue;
        stat += std::pow(a[i] - na * pooled, 2) / (na * pooled) + std::pow(b[i] - nb * pooled, 2) / (nb * pooled);
    }
    return stat;
}

TEST(ChiSquare, IdenticalCounts) {
    std::array<std::uint64_t, 3> a{10, 20, 30};
    auto r = chi_square_two_sample(a, a);
    EXPECT_EQ(r.statistic, 0);
    EXPECT_EQ(r.p_value, 1);
    EXPECT_EQ(r.degrees_of_freedom, 2);
}

TEST(ChiSquare, DistinguishableExample) {
    std::array<std::uint64_t, 3> a{0, 500, 500};
    std::array<std::uint64_t, 3> b{250, 250, 500};
    auto r = chi_square_two_sample(a, b);
    EXPECT_NEAR(r.statistic, chi_square_oracle({0, 500, 500}, {250, 250, 500}), 1e-9);
    EXPECT_NEAR(r.statistic, 1000.0 / 3.0, 1e-9);
    EXPECT_EQ(r.degrees_of_freedom, 2);
    // Upper tail at 2 dof is exp(-x/2).
    EXPECT_NEAR(r.p_value, std::exp(-r.statistic / 2), 1e-80);
    EXPECT_LT(r.p_value, 1e-3);
}

TEST(ChiSquare, DropsEmptyCellsAndRejectsDegenerate) {
    std::array<std::uint64_t, 4> a{0, 40, 60, 0};
    std::array<std::uint64_t, 4> b{0, 50, 50, 0};
    EXPECT_EQ(chi_square_two_sample(a, b).degrees_of_freedom, 1);
    std::array<std::uint64_t, 3> c{0, 10, 0};
    EXPECT_THROW(chi_square_two_sample(c, c), DegenerateData);
    std::array<std::uint64_t, 3> z{0, 0, 0};
    EXPECT_THROW(chi_square_two_sample(c, z), DegenerateData);
    std::array<std::uint64_t, 2> two{1, 1};
    EXPECT_THROW(chi_square_two_sample(c, two), DimensionMismatch);
}

TEST(ChiSquare, PValueKnownQuantiles) {
    EXPECT_NEAR(chi_square_p_value(3.841458820694124, 1), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_p_value(9.21034037197618, 2), 0.01, 1e-9);
    EXPECT_NEAR(chi_square_p_value(11.344866730144373, 3), 0.01, 1e-9);
}

TEST(ChiSquare, NullCalibrationOnSinglet) {
    // Same configuration, independent seeds: p > 0.01 in at least 95 of 100.
    FilterConfig cfg;
    cfg.rule = RuleSpec::singlet();
    int ok = 0;
    for (std::uint64_t k = 0; k < 100; k++) {
        cfg.evaluation = Evaluation::monte_carlo(100000, 1000 + 2 * k);
        auto a = run_filter(cfg);
        cfg.evaluation.seed = 1001 + 2 * k;
        auto b = run_filter(cfg);
        if (chi_square_two_sample(*a.counts, *b.counts).p_value > 0.01) {
            ok++;
        }
    }
    EXPECT_GE(ok, 95);
}

}  // namespace
}  // namespace ifm
