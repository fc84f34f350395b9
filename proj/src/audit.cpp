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

#include "ifm/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ifm/rng.hpp"

namespace ifm {

namespace {

// Stream ids under the audit seed.
constexpr std::uint64_t kInputStream = 1;
constexpr std::uint64_t kUnitaryStream = 2;
constexpr std::uint64_t kMonteCarloStream = 3;

constexpr double kMinSurvive = 1e-6;

bool same_basis(const Basis &a, const Basis &b) {
    return a.b1().approx_equal(b.b1(), kExactTol) || a.b1().approx_equal(b.b2(), kExactTol);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::string pair_label(const QubitState &probe, const QubitState &object, double q) {
    return "probe=" + state_label(probe) + ", object=" + state_label(object) + ", q=" + fmt(q);
}

const std::vector<QubitState> &corner_states() {
    static const std::vector<QubitState> states{QubitState::x(),          QubitState::y(),
                                                QubitState::sigma_plus(), QubitState::sigma_minus(),
                                                QubitState::diag_plus(),  QubitState::diag_minus()};
    return states;
}

// Largest-so-far tracker that remembers where the maximum was seen.
struct Worst {
    double value = 0;
    std::string where;

    void offer(double v, const std::string &w) {
        if (v > value || where.empty()) {
            value = v;
            where = w;
        }
    }
};

// Infidelity of two survivors plus the scatter gap; both survivors absent
// compares scatter only.
std::pair<double, double> outcome_discrepancy(const CouplingOutcome &a, const CouplingOutcome &b) {
    double gap = std::abs(a.p_scatter - b.p_scatter);
    double infidelity = 0;
    if (a.survivor && b.survivor) {
        infidelity = 1.0 - fidelity(*a.survivor, *b.survivor);
    }
    return {infidelity, gap};
}

}  // namespace

std::string to_string(CheckId id) {
    switch (id) {
        case CheckId::indistinguishability:
            return "C1_indistinguishability";
        case CheckId::role_symmetry:
            return "C2_role_symmetry";
        case CheckId::anti_alignment:
            return "C3_anti_alignment";
        case CheckId::basis_covariance:
            return "C4_basis_covariance";
    }
    return "unknown";
}

CheckId check_id_from_string(const std::string &s) {
    for (CheckId id : {CheckId::indistinguishability, CheckId::role_symmetry, CheckId::anti_alignment,
                       CheckId::basis_covariance}) {
        if (to_string(id) == s) {
            return id;
        }
    }
    throw ConfigError("unknown check id '" + s + "'");
}

std::string state_label(const QubitState &s) {
    static const char *names[] = {"x", "y", "sigma+", "sigma-", "d+", "d-"};
    const auto &corners = corner_states();
    for (std::size_t k = 0; k < corners.size(); k++) {
        if (s.approx_equal(corners[k], kExactTol)) {
            return names[k];
        }
    }
    return s.str();
}

void AuditConfig::validate() const {
    if (bases.empty()) {
        throw ConfigError("audit needs at least one basis");
    }
    if (!(epsilon_exact > 0 && epsilon_exact < 1)) {
        throw ConfigError("epsilon_exact must be in (0,1)");
    }
    if (!(epsilon_mc > 0 && epsilon_mc < 1)) {
        throw ConfigError("epsilon_mc must be in (0,1)");
    }
    if (unitary_samples < 1 || input_samples < 1) {
        throw ConfigError("sample counts must be positive");
    }
    if (noise_levels.empty()) {
        throw ConfigError("audit needs at least one noise level");
    }
    for (double q : noise_levels) {
        NoiseParam{q};
    }
    if (mode == EvalMode::monte_carlo && trials < 1) {
        throw ConfigError("trials must be a positive integer");
    }
}

const CheckResult &AuditReport::check(CheckId id) const {
    for (const auto &c : checks) {
        if (c.id == id) {
            return c;
        }
    }
    throw ConfigError("report has no result for " + to_string(id));
}

std::string ModeComparison::label() const {
    return to_string(roles) + ", object=" + state_label(object_basis.b1()) + ", analyzer=" + analyzer.name() +
           ", mode1=" + object_basis.name() + " vs mode2=" + conjugate.name() + ", q=" + fmt(q);
}

ModeComparison compare_source_modes(const RuleSpec &rule, Roles roles, const Basis &object_basis,
                                    const Basis &analyzer, const Basis &conjugate, double q,
                                    const Evaluation &eval) {
    QubitDensity rho1 = density_of_ensemble(Ensemble::uniform(object_basis));
    QubitDensity rho2 = density_of_ensemble(Ensemble::uniform(conjugate));
    if ((rho1.matrix() - rho2.matrix()).cwiseAbs().maxCoeff() > kExactTol) {
        throw ConfigError("source modes do not share a density matrix");
    }

    FilterConfig cfg;
    cfg.roles = roles;
    cfg.object_state = object_basis.b1();
    cfg.analyzer_basis = analyzer;
    cfg.rule = rule;
    cfg.noise = NoiseParam(q);
    cfg.evaluation = eval;

    ModeComparison c;
    c.roles = roles;
    c.object_basis = object_basis;
    c.analyzer = analyzer;
    c.conjugate = conjugate;
    c.q = q;

    cfg.source_mode = 1;
    cfg.source_basis = object_basis;
    c.mode1 = run_filter(cfg);
    cfg.source_mode = 2;
    cfg.source_basis = conjugate;
    if (eval.mode == EvalMode::monte_carlo) {
        cfg.evaluation.seed = SplitMix64::mix(eval.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    }
    c.mode2 = run_filter(cfg);

    auto a1 = c.mode1.as_array();
    auto a2 = c.mode2.as_array();
    c.full_tvd = tvd(a1, a2);
    if (c.mode1.conditional[0] + c.mode1.conditional[1] > 0 && c.mode2.conditional[0] + c.mode2.conditional[1] > 0) {
        c.conditional_tvd = tvd(c.mode1.conditional, c.mode2.conditional);
    }
    if (c.mode1.counts && c.mode2.counts) {
        try {
            c.chi_square = chi_square_two_sample(*c.mode1.counts, *c.mode2.counts);
        } catch (const DegenerateData &) {
            // All mass on one shared cell: the samples agree.
            c.chi_square = ChiSquareResult{0.0, 1.0, 0};
        }
    }
    return c;
}

std::vector<ModeComparison> indistinguishability_cases(const RuleSpec &rule, const AuditConfig &cfg) {
    std::vector<ModeComparison> cases;
    std::uint64_t index = 0;
    for (Roles roles : {Roles::photon_probe, Roles::atom_probe}) {
        for (const Basis &object_basis : cfg.bases) {
            for (const Basis &analyzer : cfg.bases) {
                for (const Basis &conjugate : cfg.bases) {
                    if (same_basis(object_basis, conjugate)) {
                        continue;
                    }
                    for (double q : cfg.noise_levels) {
                        Evaluation eval;
                        if (cfg.mode == EvalMode::monte_carlo) {
                            eval = Evaluation::monte_carlo(
                                cfg.trials, SplitMix64::for_stream(cfg.seed, kMonteCarloStream + index)(), cfg.threads);
                        }
                        cases.push_back(compare_source_modes(rule, roles, object_basis, analyzer, conjugate, q, eval));
                        index++;
                    }
                }
            }
        }
    }
    return cases;
}

std::vector<std::pair<QubitState, QubitState>> audit_inputs(const AuditConfig &cfg) {
    std::vector<std::pair<QubitState, QubitState>> inputs;
    for (const auto &p : corner_states()) {
        for (const auto &o : corner_states()) {
            inputs.emplace_back(p, o);
        }
    }
    SplitMix64 rng = SplitMix64::for_stream(cfg.seed, kInputStream);
    auto uniform_state = [&rng] {
        double z = 2.0 * rng.uniform() - 1.0;
        double phi = 2.0 * std::numbers::pi * rng.uniform();
        return from_bloch_angles(std::acos(z), phi);
    };
    for (int k = 0; k < cfg.input_samples; k++) {
        QubitState p = uniform_state();
        QubitState o = uniform_state();
        inputs.emplace_back(p, o);
    }
    return inputs;
}

std::vector<Mat2> audit_unitaries(const AuditConfig &cfg) {
    std::vector<Mat2> us;
    for (const Basis &from : cfg.bases) {
        for (const Basis &to : cfg.bases) {
            if (!same_basis(from, to)) {
                us.push_back(basis_map(from, to));
            }
        }
    }
    SplitMix64 rng = SplitMix64::for_stream(cfg.seed, kUnitaryStream);
    for (int k = 0; k < cfg.unitary_samples; k++) {
        double u1 = rng.uniform();
        double u2 = rng.uniform();
        double u3 = rng.uniform();
        us.push_back(haar_unitary(u1, u2, u3));
    }
    return us;
}

CheckResult check_indistinguishability(const RuleSpec &rule, const AuditConfig &cfg) {
    cfg.validate();
    CheckResult r;
    r.id = CheckId::indistinguishability;
    auto cases = indistinguishability_cases(rule, cfg);

    Worst full;
    Worst conditional;
    std::map<std::string, double> per_role;
    double min_p = 1.0;
    std::string min_p_where;
    for (const auto &c : cases) {
        full.offer(c.full_tvd, c.label());
        conditional.offer(c.conditional_tvd, c.label());
        std::string role = to_string(c.roles);
        per_role[role + ".full_tvd"] = std::max(per_role[role + ".full_tvd"], c.full_tvd);
        per_role[role + ".conditional_tvd"] = std::max(per_role[role + ".conditional_tvd"], c.conditional_tvd);
        if (c.chi_square && (c.chi_square->p_value < min_p || min_p_where.empty())) {
            min_p = c.chi_square->p_value;
            min_p_where = c.label();
        }
    }
    r.metric = full.value;
    r.details = per_role;
    r.details["worst_full_tvd"] = full.value;
    r.details["worst_conditional_tvd"] = conditional.value;
    r.details["cases"] = static_cast<double>(cases.size());

    if (cfg.mode == EvalMode::exact) {
        r.threshold = cfg.epsilon_exact;
        r.passed = full.value < cfg.epsilon_exact && conditional.value < cfg.epsilon_exact;
        r.witness = full.where;
    } else {
        double corrected = cfg.epsilon_mc / static_cast<double>(cases.size());
        r.threshold = corrected;
        r.passed = min_p > corrected;
        r.witness = min_p_where;
        r.details["min_p_value"] = min_p;
        r.notes.push_back("monte carlo: metric is the worst empirical TVD; verdict from two-sample chi-square, "
                          "p-value threshold " + fmt(cfg.epsilon_mc) + " / " + std::to_string(cases.size()) +
                          " cases");
    }
    return r;
}

CheckResult check_role_symmetry(const RuleSpec &rule, const AuditConfig &cfg) {
    cfg.validate();
    CheckResult r;
    r.id = CheckId::role_symmetry;
    r.threshold = cfg.epsilon_exact;
    Worst worst;
    double worst_inf = 0;
    double worst_gap = 0;
    double min_fid = 1;
    for (const auto &[probe, object] : audit_inputs(cfg)) {
        for (double q : cfg.noise_levels) {
            NoiseParam noise(q);
            auto direct = apply_rule(rule, probe, object, noise);
            auto swapped = swapped_channel(rule, probe, object, noise);
            auto [inf, gap] = outcome_discrepancy(direct, swapped);
            worst_inf = std::max(worst_inf, inf);
            worst_gap = std::max(worst_gap, gap);
            min_fid = std::min(min_fid, 1.0 - inf);
            worst.offer(std::max(inf, gap), pair_label(probe, object, q));
        }
    }
    r.metric = worst.value;
    r.witness = worst.where;
    r.passed = r.metric < r.threshold;
    r.details["worst_infidelity"] = worst_inf;
    r.details["worst_scatter_gap"] = worst_gap;
    r.details["min_fidelity"] = min_fid;
    return r;
}

CheckResult check_anti_alignment(const RuleSpec &rule, const AuditConfig &cfg) {
    cfg.validate();
    CheckResult r;
    r.id = CheckId::anti_alignment;
    r.threshold = cfg.epsilon_exact;
    Worst worst;
    std::vector<double> per_basis(cfg.bases.size(), 0.0);
    int evaluated = 0;
    for (const auto &[probe, object] : audit_inputs(cfg)) {
        auto out = apply_rule(rule, probe, object);
        if (!out.survivor || out.p_survive() <= kMinSurvive) {
            continue;
        }
        evaluated++;
        for (std::size_t k = 0; k < cfg.bases.size(); k++) {
            const Basis &b = cfg.bases[k];
            auto cells = joint_born_distribution(*out.survivor, b, b);
            double aligned = cells[0] + cells[3];
            per_basis[k] = std::max(per_basis[k], aligned);
            worst.offer(aligned, pair_label(probe, object, 0.0) + ", basis=" + b.name());
        }
    }
    r.metric = worst.value;
    r.witness = worst.where;
    r.passed = r.metric < r.threshold;
    for (std::size_t k = 0; k < cfg.bases.size(); k++) {
        std::string key = "aligned_weight." + cfg.bases[k].name();
        if (r.details.count(key)) {
            key += "#" + std::to_string(k);
        }
        r.details[key] = per_basis[k];
    }
    r.details["inputs_evaluated"] = evaluated;
    r.notes.push_back("evaluated on the coupled branch (q = 0); fly-by events are not couplings");
    return r;
}

CheckResult check_basis_covariance(const RuleSpec &rule, const AuditConfig &cfg) {
    cfg.validate();
    CheckResult r;
    r.id = CheckId::basis_covariance;
    r.threshold = cfg.epsilon_exact;

    auto inputs = audit_inputs(cfg);
    auto unitaries = audit_unitaries(cfg);
    const std::size_t corners = corner_states().size() * corner_states().size();

    Worst worst;
    double worst_inf = 0;
    double worst_gap = 0;
    auto compare = [&](const Mat2 &u, std::size_t ui, const QubitState &probe, const QubitState &object, double q) {
        NoiseParam noise(q);
        auto rotated_in = apply_rule(rule, probe.transformed(u), object.transformed(u), noise);
        auto rotated_out = apply_rule(rule, probe, object, noise);
        if (rotated_out.survivor) {
            rotated_out.survivor = rotated_out.survivor->conjugated(kron(u, u));
        }
        auto [inf, gap] = outcome_discrepancy(rotated_in, rotated_out);
        worst_inf = std::max(worst_inf, inf);
        worst_gap = std::max(worst_gap, gap);
        worst.offer(std::max(inf, gap), pair_label(probe, object, q) + ", unitary #" + std::to_string(ui));
    };
    for (double q : cfg.noise_levels) {
        for (std::size_t ui = 0; ui < unitaries.size(); ui++) {
            for (std::size_t k = 0; k < corners; k++) {
                compare(unitaries[ui], ui, inputs[k].first, inputs[k].second, q);
            }
        }
        // Random inputs each meet one unitary.
        for (std::size_t k = corners; k < inputs.size(); k++) {
            std::size_t ui = (k - corners) % unitaries.size();
            compare(unitaries[ui], ui, inputs[k].first, inputs[k].second, q);
        }
    }
    r.metric = worst.value;
    r.witness = worst.where;
    r.passed = r.metric < r.threshold;
    r.details["worst_infidelity"] = worst_inf;
    r.details["worst_scatter_gap"] = worst_gap;

    // Scatter law against the basis-free interaction probability; reported,
    // not part of the verdict.
    Worst law;
    for (std::size_t k = 0; k < inputs.size(); k++) {
        const auto &[probe, object] = inputs[k];
        double p = apply_rule(rule, probe, object).p_scatter;
        double ip = interaction_probability(probe, object);
        law.offer(std::abs(p - ip), "p_scatter " + fmt(p) + " vs interaction probability " + fmt(ip) + " at " +
                                        pair_label(probe, object, 0.0));
    }
    r.details["scatter_law_residual"] = law.value;
    if (law.value >= cfg.epsilon_exact) {
        r.notes.push_back("scatter law differs from interaction probability: " + law.where);
    }
    return r;
}

AuditReport audit_rule(const RuleSpec &rule, const AuditConfig &cfg) {
    cfg.validate();
    AuditReport report;
    report.rule = rule.name();
    report.config = cfg;
    report.checks.push_back(check_indistinguishability(rule, cfg));
    report.checks.push_back(check_role_symmetry(rule, cfg));
    report.checks.push_back(check_anti_alignment(rule, cfg));
    report.checks.push_back(check_basis_covariance(rule, cfg));
    report.overall_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                      [](const CheckResult &c) { return c.passed; });
    return report;
}

}  // namespace ifm
