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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ifm/rules.hpp"
#include "oracle.hpp"

namespace ifm {
namespace {

using testing::max_abs_diff;
using testing::random_state;

JointDensity product(const QubitState &p, const QubitState &o) { return JointDensity::pure(tensor_product(p, o)); }

Mat4 to_eigen(const oracle::M4 &m) {
    Mat4 out;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            out(r, c) = m[r][c];
        }
    }
    return out;
}

oracle::V2 to_oracle(const QubitState &s) { return {s[0], s[1]}; }

oracle::Kind oracle_kind(RuleKind k) {
    switch (k) {
        case RuleKind::probe_rigid: return oracle::Kind::probe_rigid;
        case RuleKind::object_rigid: return oracle::Kind::object_rigid;
        case RuleKind::singlet: return oracle::Kind::singlet;
        case RuleKind::random_mix: return oracle::Kind::random_mix;
        case RuleKind::preferred_basis: return oracle::Kind::preferred;
        default: return oracle::Kind::coherent;
    }
}

Mat4 aligned_projector(const Basis &b) {
    Vec4 v1 = tensor_product(b.b1(), b.b1()).amplitudes();
    Vec4 v2 = tensor_product(b.b2(), b.b2()).amplitudes();
    return v1 * v1.adjoint() + v2 * v2.adjoint();
}

TEST(AlignedState, Examples) {
    EXPECT_TRUE(aligned_state(QubitState::x()).approx_equal(QubitState::x(), 1e-15));
    EXPECT_TRUE(aligned_state(QubitState::sigma_minus()).approx_equal(QubitState::sigma_minus(), 1e-15));
}

TEST(InteractionProbability, Examples) {
    EXPECT_NEAR(interaction_probability(QubitState::x(), QubitState::x()), 1, 1e-12);
    EXPECT_NEAR(interaction_probability(QubitState::y(), QubitState::x()), 0, 1e-12);
    EXPECT_NEAR(interaction_probability(QubitState::sigma_plus(), QubitState::x()), 0.5, 1e-12);
}

TEST(Property, CertainAndNullInteraction) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; i++) {
        auto w = random_state(rng);
        EXPECT_NEAR(interaction_probability(aligned_state(w), w), 1, 1e-12);
        EXPECT_NEAR(interaction_probability(aligned_state(w).orthogonal(), w), 0, 1e-12);
        auto p = random_state(rng);
        EXPECT_NEAR(interaction_probability(p, w), interaction_probability(w, p), 1e-12);
    }
}

TEST(ApplyRule, ObjectRigidScenario) {
    auto out = apply_rule(RuleSpec::object_rigid(), QubitState::sigma_plus(), QubitState::x());
    EXPECT_NEAR(out.p_scatter, 0.5, 1e-12);
    ASSERT_TRUE(out.survivor);
    EXPECT_NEAR(fidelity(*out.survivor, product(QubitState::y(), QubitState::x())), 1, 1e-12);
}

TEST(ApplyRule, ProbeRigidScenario) {
    auto out = apply_rule(RuleSpec::probe_rigid(), QubitState::sigma_plus(), QubitState::x());
    EXPECT_NEAR(out.p_scatter, 0.5, 1e-12);
    ASSERT_TRUE(out.survivor);
    EXPECT_NEAR(fidelity(*out.survivor, product(QubitState::sigma_plus(), QubitState::sigma_minus())), 1, 1e-12);
}

TEST(ApplyRule, SingletWithAndWithoutNoise) {
    auto out = apply_rule(RuleSpec::singlet(), QubitState::y(), QubitState::x());
    EXPECT_NEAR(out.p_scatter, 0, 1e-12);
    EXPECT_LE(max_abs_diff(out.survivor->matrix(), JointDensity::singlet().matrix()), 1e-12);

    auto noisy = apply_rule(RuleSpec::singlet(), QubitState::y(), QubitState::x(), NoiseParam(0.5));
    EXPECT_NEAR(noisy.p_scatter, 0, 1e-12);
    auto expect = JointDensity::mix(0.5, product(QubitState::y(), QubitState::x()), JointDensity::singlet());
    EXPECT_LE(max_abs_diff(noisy.survivor->matrix(), expect.matrix()), 1e-12);
}

TEST(ApplyRule, CoherentProjectionBreaksScatterLaw) {
    auto rule = RuleSpec::coherent_projection(Basis::xy());
    auto out = apply_rule(rule, QubitState::sigma_plus(), QubitState::sigma_plus());
    EXPECT_NEAR(out.p_scatter, 0.5, 1e-12);
    EXPECT_NEAR(interaction_probability(QubitState::sigma_plus(), QubitState::sigma_plus()), 1, 1e-12);
    EXPECT_FALSE(rule.universal_scatter_law());
}

TEST(ApplyRule, CertainScatterOmitsSurvivor) {
    for (const auto &rule : builtin_rules()) {
        if (!rule.universal_scatter_law()) {
            continue;
        }
        auto out = apply_rule(rule, QubitState::diag_plus(), QubitState::diag_plus());
        EXPECT_EQ(out.p_scatter, 1.0) << rule.name();
        EXPECT_FALSE(out.survivor) << rule.name();
    }
}

TEST(ApplyRule, MatchesOracleOnRandomInputs) {
    std::mt19937_64 rng(22);
    std::vector<RuleSpec> rules = builtin_rules();
    rules.push_back(RuleSpec::preferred_basis(Basis::diag()));
    rules.push_back(RuleSpec::coherent_projection(Basis::sigma()));
    for (int i = 0; i < 300; i++) {
        auto p = random_state(rng);
        auto o = random_state(rng);
        double q = (i % 3) * 0.25;
        for (const auto &rule : rules) {
            oracle::Pair b = oracle::xy();
            if (rule.basis()) {
                b = {to_oracle(rule.basis()->b1()), to_oracle(rule.basis()->b2())};
            }
            auto ref = oracle::couple(oracle_kind(rule.kind()), to_oracle(p), to_oracle(o), q, b);
            auto out = apply_rule(rule, p, o, NoiseParam(q));
            EXPECT_NEAR(out.p_scatter, ref.p_scatter, 1e-12) << rule.name();
            ASSERT_TRUE(out.survivor) << rule.name();
            Mat4 weighted = out.p_survive() * out.survivor->matrix();
            EXPECT_LE(max_abs_diff(weighted, to_eigen(ref.survivor_weighted)), 1e-12) << rule.name();
        }
    }
}

TEST(Property, UniversalScatterLaw) {
    std::mt19937_64 rng(23);
    for (const auto &rule : builtin_rules()) {
        if (rule.kind() == RuleKind::coherent_projection) {
            EXPECT_FALSE(rule.universal_scatter_law());
            continue;
        }
        EXPECT_TRUE(rule.universal_scatter_law()) << rule.name();
        for (int i = 0; i < 200; i++) {
            auto p = random_state(rng);
            auto o = random_state(rng);
            EXPECT_NEAR(apply_rule(rule, p, o).p_scatter, interaction_probability(p, o), 1e-12);
        }
        auto w = random_state(rng);
        EXPECT_NEAR(apply_rule(rule, aligned_state(w), w).p_scatter, 1, 1e-12) << rule.name();
        EXPECT_NEAR(apply_rule(rule, aligned_state(w).orthogonal(), w).p_scatter, 0, 1e-12) << rule.name();
    }
}

TEST(Property, SingletOutputIsInputIndependent) {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 1000; i++) {
        auto p = random_state(rng);
        auto o = random_state(rng);
        auto out = apply_rule(RuleSpec::singlet(), p, o);
        if (!out.survivor) {
            continue;
        }
        EXPECT_LE(max_abs_diff(out.survivor->matrix(), JointDensity::singlet().matrix()), 1e-12);
    }
}

TEST(Property, SingletAntiAlignedInEveryBasis) {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 200; i++) {
        auto b = Basis::completing(random_state(rng));
        auto c = joint_born_distribution(JointDensity::singlet(), b, b);
        EXPECT_NEAR(c[0] + c[3], 0, 1e-12);
    }
}

TEST(Property, NoiseIsConvexBlend) {
    std::mt19937_64 rng(26);
    for (const auto &rule : builtin_rules()) {
        for (int i = 0; i < 50; i++) {
            auto p = random_state(rng);
            auto o = random_state(rng);
            double q = 0.37;
            auto base = apply_rule(rule, p, o);
            auto noisy = apply_rule(rule, p, o, NoiseParam(q));
            EXPECT_NEAR(noisy.p_scatter, (1 - q) * base.p_scatter, 1e-12);
            Mat4 expect = q * product(p, o).matrix();
            if (base.survivor) {
                expect += (1 - q) * base.p_survive() * base.survivor->matrix();
            }
            EXPECT_LE(max_abs_diff(Mat4(noisy.p_survive() * noisy.survivor->matrix()), expect), 1e-12);

            auto passthrough = apply_rule(rule, p, o, NoiseParam(1.0));
            EXPECT_EQ(passthrough.p_scatter, 0.0);
            EXPECT_LE(max_abs_diff(passthrough.survivor->matrix(), product(p, o).matrix()), 1e-12);
        }
    }
}

TEST(Noise, RangeChecked) {
    EXPECT_THROW(NoiseParam(-0.1), ConfigError);
    EXPECT_THROW(NoiseParam(1.1), ConfigError);
    EXPECT_THROW(NoiseParam(std::nan("")), ConfigError);
    EXPECT_NO_THROW(NoiseParam(1.0));
}

TEST(CustomRule, IdentityNeverScatters) {
    auto rule = validate_custom_rule(Mat4::Identity(), "identity");
    EXPECT_EQ(rule.kind(), RuleKind::custom);
    EXPECT_EQ(rule.name(), "identity");
    std::mt19937_64 rng(27);
    for (int i = 0; i < 50; i++) {
        auto p = random_state(rng);
        auto o = random_state(rng);
        auto out = apply_rule(rule, p, o);
        EXPECT_NEAR(out.p_scatter, 0, 1e-12);
        EXPECT_LE(max_abs_diff(out.survivor->matrix(), product(p, o).matrix()), 1e-12);
    }
}

TEST(CustomRule, ReproducesCoherentProjection) {
    std::mt19937_64 rng(28);
    for (const auto &b : {Basis::xy(), Basis::sigma(), Basis::diag()}) {
        auto custom = validate_custom_rule(Mat4::Identity() - aligned_projector(b));
        auto coherent = RuleSpec::coherent_projection(b);
        for (int i = 0; i < 100; i++) {
            auto p = random_state(rng);
            auto o = random_state(rng);
            double q = i % 2 ? 0.5 : 0.0;
            auto a = apply_rule(custom, p, o, NoiseParam(q));
            auto c = apply_rule(coherent, p, o, NoiseParam(q));
            EXPECT_NEAR(a.p_scatter, c.p_scatter, 1e-9);
            ASSERT_EQ(a.survivor.has_value(), c.survivor.has_value());
            if (a.survivor) {
                EXPECT_LE(max_abs_diff(a.survivor->matrix(), c.survivor->matrix()), 1e-9);
            }
        }
    }
}

TEST(CustomRule, ContractionViolation) {
    try {
        validate_custom_rule(2.0 * Mat4::Identity());
        FAIL() << "expected ContractionViolation";
    } catch (const ContractionViolation &e) {
        EXPECT_NEAR(e.min_eigenvalue(), -3, 1e-12);
    }
    Mat4 bad = Mat4::Identity();
    bad(1, 2) = std::nan("");
    EXPECT_THROW(validate_custom_rule(bad), InvalidRule);
}

TEST(SwappedChannel, Examples) {
    auto s = swapped_channel(RuleSpec::singlet(), QubitState::sigma_plus(), QubitState::x());
    EXPECT_LE(max_abs_diff(s.survivor->matrix(), JointDensity::singlet().matrix()), 1e-12);

    auto direct = apply_rule(RuleSpec::object_rigid(), QubitState::sigma_plus(), QubitState::x());
    auto swapped = swapped_channel(RuleSpec::object_rigid(), QubitState::sigma_plus(), QubitState::x());
    EXPECT_NEAR(fidelity(*swapped.survivor, product(QubitState::sigma_plus(), QubitState::sigma_minus())), 1, 1e-12);
    EXPECT_NEAR(fidelity(*direct.survivor, *swapped.survivor), 0.25, 1e-12);

    auto r = swapped_channel(RuleSpec::random_mix(), QubitState::sigma_plus(), QubitState::x());
    EXPECT_LE(max_abs_diff(r.survivor->matrix(), JointDensity::maximally_mixed().matrix()), 1e-12);
}

TEST(Registry, BuiltinNames) {
    std::vector<std::string> names;
    for (const auto &r : builtin_rules()) {
        names.push_back(r.name());
    }
    std::vector<std::string> expect{"probe-rigid", "object-rigid", "singlet", "random-mix", "preferred-basis:sigma",
                                    "coherent-projection:xy"};
    EXPECT_EQ(names, expect);
}

}  // namespace
}  // namespace ifm
