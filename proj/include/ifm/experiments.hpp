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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "ifm/qcore.hpp"
#include "ifm/rules.hpp"

namespace ifm {

/// Which particle the source emits. Rules always take (photon, atom) as
/// (probe, object) arguments; with atom_probe the source emits atoms, the
/// filter holds a photon, and the analyzer measures the atom.
enum class Roles { photon_probe, atom_probe };

Roles other(Roles r);
std::string to_string(Roles r);

enum class EvalMode { exact, monte_carlo };

struct Evaluation {
    EvalMode mode = EvalMode::exact;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    /// Worker threads for Monte Carlo. Counts do not depend on this.
    unsigned threads = 1;

    static Evaluation exact() { return {}; }
    static Evaluation monte_carlo(std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
        return {EvalMode::monte_carlo, trials, seed, threads};
    }
};

/// One run of the source -> filter -> analyzer device.
struct FilterConfig {
    Roles roles = Roles::photon_probe;
    /// 1: source emits the object's eigenbasis. 2: a conjugate basis.
    int source_mode = 1;
    /// Overrides the mode's default source basis (mode 1: eigenbasis of
    /// object_state; mode 2: sigma).
    std::optional<Basis> source_basis;
    QubitState object_state = QubitState::x();
    Basis analyzer_basis = Basis::xy();
    RuleSpec rule = RuleSpec::singlet();
    NoiseParam noise;
    Evaluation evaluation;

    Basis effective_source_basis() const;
    /// Throws ConfigError on an invalid mode or zero trials.
    void validate() const;
};

/// Detector statistics: clicks on analyzer b1 / b2, or scatter.
struct OutcomeDistribution {
    double p_click_b1 = 0;
    double p_click_b2 = 0;
    double p_scatter = 0;
    /// Click distribution renormalized over surviving events; (0,0) when
    /// nothing survives.
    std::array<double, 2> conditional{};
    /// Monte Carlo only: counts of (b1, b2, scatter).
    std::optional<std::array<std::uint64_t, 3>> counts;

    std::array<double, 3> as_array() const { return {p_click_b1, p_click_b2, p_scatter}; }
};

OutcomeDistribution run_filter_exact(const FilterConfig &cfg);
OutcomeDistribution run_filter_mc(const FilterConfig &cfg);
/// Dispatches on cfg.evaluation.mode.
OutcomeDistribution run_filter(const FilterConfig &cfg);
/// Same device with the roles of the two particles exchanged; rule unchanged.
OutcomeDistribution run_role_swapped(const FilterConfig &cfg);

struct CorrelationResult {
    Basis basis = Basis::xy();
    /// Cells 2*k + l over (probe outcome k, object outcome l).
    std::array<double, 4> cells{};
    /// Weight on (b1,b1) and (b2,b2).
    double aligned_weight = 0;
    std::optional<std::array<std::uint64_t, 4>> counts;
};

/// Survivor joint statistics in (basis, basis). Throws NoSurvivors when the
/// survive probability is <= 1e-12.
CorrelationResult run_correlation(const QubitState &probe, const QubitState &object, const Basis &basis,
                                  const RuleSpec &rule, NoiseParam noise = NoiseParam());
CorrelationResult run_correlation_mc(const QubitState &probe, const QubitState &object, const Basis &basis,
                                     const RuleSpec &rule, NoiseParam noise, std::uint64_t trials,
                                     std::uint64_t seed);

struct FlipResult {
    /// Probe outcome probabilities in the xy basis, given survival.
    std::array<double, 2> probe_outcomes{};
    /// Object density conditioned on each probe outcome; absent for outcomes
    /// with probability <= 1e-12.
    std::array<std::optional<QubitDensity>, 2> object_given_probe;
    double p_survive = 0;
};

/// Measures the survivor's probe in xy and conditions the object on it.
FlipResult run_flip(const QubitState &probe, const QubitState &object, const RuleSpec &rule,
                    NoiseParam noise = NoiseParam());

}  // namespace ifm
