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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifm/experiments.hpp"
#include "ifm/rules.hpp"
#include "ifm/stats.hpp"

/// Consistency battery for candidate non-interaction rules.
///
///   C1 indistinguishability  Two source ensembles with the same density
///                            matrix must give the same detector statistics,
///                            for every object/analyzer basis and both role
///                            assignments.
///   C2 role symmetry         Exchanging which particle is called probe must
///                            not change the outcome.
///   C3 anti-alignment        Survivors are never found aligned, in any basis.
///   C4 basis covariance      The rule commutes with a common rotation U x U.
namespace ifm {

enum class CheckId { indistinguishability, role_symmetry, anti_alignment, basis_covariance };

std::string to_string(CheckId id);
CheckId check_id_from_string(const std::string &s);

struct CheckResult {
    CheckId id = CheckId::indistinguishability;
    bool passed = false;
    /// Worst-case discrepancy; >= 0.
    double metric = 0;
    /// Pass threshold. For exact evaluation passed == (metric < threshold).
    /// For Monte Carlo C1 the threshold is a chi-square p-value and passed
    /// means every case's p-value exceeded it (Bonferroni-corrected).
    double threshold = 0;
    /// Worst configuration.
    std::string witness;
    /// Named sub-metrics (per role, per basis, scatter-law residual, ...).
    std::map<std::string, double> details;
    std::vector<std::string> notes;
};

struct AuditConfig {
    std::vector<Basis> bases{Basis::xy(), Basis::sigma(), Basis::diag()};
    double epsilon_exact = 1e-9;
    double epsilon_mc = 1e-3;
    int unitary_samples = 100;
    int input_samples = 200;
    std::vector<double> noise_levels{0.0, 0.5};
    std::uint64_t seed = 42;
    EvalMode mode = EvalMode::exact;
    std::uint64_t trials = 100000;
    unsigned threads = 1;

    /// Throws ConfigError.
    void validate() const;
};

struct AuditReport {
    std::string rule;
    std::vector<CheckResult> checks;
    bool overall_pass = false;
    AuditConfig config;

    const CheckResult &check(CheckId id) const;
};

/// One C1 case: mode 1 (source in the object's eigenbasis) against mode 2
/// (source in a conjugate basis), same rule, roles, analyzer and noise.
struct ModeComparison {
    Roles roles = Roles::photon_probe;
    Basis object_basis = Basis::xy();
    Basis analyzer = Basis::xy();
    Basis conjugate = Basis::sigma();
    double q = 0;
    OutcomeDistribution mode1;
    OutcomeDistribution mode2;
    /// Over (b1, b2, scatter).
    double full_tvd = 0;
    /// Over clicks renormalized by survival.
    double conditional_tvd = 0;
    std::optional<ChiSquareResult> chi_square;

    std::string label() const;
};

/// Object prepared in object_basis.b1().
ModeComparison compare_source_modes(const RuleSpec &rule, Roles roles, const Basis &object_basis,
                                    const Basis &analyzer, const Basis &conjugate, double q,
                                    const Evaluation &eval = Evaluation::exact());

/// Every C1 case the config asks for, in report order.
std::vector<ModeComparison> indistinguishability_cases(const RuleSpec &rule, const AuditConfig &cfg);

/// (x, y, sigma+-, d+-)^2 followed by cfg.input_samples Bloch-uniform pairs.
std::vector<std::pair<QubitState, QubitState>> audit_inputs(const AuditConfig &cfg);
/// Maps between each ordered pair of distinct configured bases, then
/// cfg.unitary_samples Haar-random unitaries.
std::vector<Mat2> audit_unitaries(const AuditConfig &cfg);

CheckResult check_indistinguishability(const RuleSpec &rule, const AuditConfig &cfg);
CheckResult check_role_symmetry(const RuleSpec &rule, const AuditConfig &cfg);
CheckResult check_anti_alignment(const RuleSpec &rule, const AuditConfig &cfg);
CheckResult check_basis_covariance(const RuleSpec &rule, const AuditConfig &cfg);

/// C1, C2, C3, C4 in that order; overall_pass is their conjunction.
AuditReport audit_rule(const RuleSpec &rule, const AuditConfig &cfg = AuditConfig());

/// "x", "sigma+", ... for the six named states, amplitudes otherwise.
std::string state_label(const QubitState &s);

}  // namespace ifm
