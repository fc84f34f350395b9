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

#include "ifm/experiments.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "ifm/rng.hpp"

namespace ifm {

namespace {

constexpr double kNoSurvivors = 1e-12;

// One coupling of a source particle with the filter particle, reported in
// rule slot order, plus which slot the analyzer looks at.
struct Coupling {
    CouplingOutcome outcome;
    Role measured;
};

Coupling couple(const FilterConfig &cfg, const QubitState &emitted, NoiseParam noise) {
    if (cfg.roles == Roles::photon_probe) {
        return {apply_rule(cfg.rule, emitted, cfg.object_state, noise), Role::probe};
    }
    return {apply_rule(cfg.rule, cfg.object_state, emitted, noise), Role::object};
}

std::array<double, 2> normalized(std::array<double, 2> p) {
    double s = p[0] + p[1];
    if (s <= 0) {
        return {0.0, 0.0};
    }
    return {p[0] / s, p[1] / s};
}

OutcomeDistribution from_counts(const std::array<std::uint64_t, 3> &counts, std::uint64_t trials) {
    OutcomeDistribution d;
    double n = static_cast<double>(trials);
    d.p_click_b1 = static_cast<double>(counts[0]) / n;
    d.p_click_b2 = static_cast<double>(counts[1]) / n;
    d.p_scatter = static_cast<double>(counts[2]) / n;
    d.conditional = normalized({static_cast<double>(counts[0]), static_cast<double>(counts[1])});
    d.counts = counts;
    return d;
}

// Runs fn(begin, end, counts) over [0, trials) split across threads and sums
// the per-chunk counts. Each trial seeds its own stream, so the split does
// not affect the result.
template <std::size_t N, typename Fn>
std::array<std::uint64_t, N> parallel_count(std::uint64_t trials, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));
    std::vector<std::array<std::uint64_t, N>> partial(threads, std::array<std::uint64_t, N>{});
    std::uint64_t chunk = (trials + threads - 1) / threads;
    if (threads == 1) {
        fn(0, trials, partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            std::uint64_t begin = std::min(trials, t * chunk);
            std::uint64_t end = std::min(trials, begin + chunk);
            pool.emplace_back([&, t, begin, end] { fn(begin, end, partial[t]); });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    std::array<std::uint64_t, N> total{};
    for (const auto &p : partial) {
        for (std::size_t k = 0; k < N; k++) {
            total[k] += p[k];
        }
    }
    return total;
}

}  // namespace

Roles other(Roles r) { return r == Roles::photon_probe ? Roles::atom_probe : Roles::photon_probe; }

std::string to_string(Roles r) { return r == Roles::photon_probe ? "photon-probe" : "atom-probe"; }

Basis FilterConfig::effective_source_basis() const {
    if (source_basis) {
        return *source_basis;
    }
    return source_mode == 1 ? Basis::completing(object_state) : Basis::sigma();
}

void FilterConfig::validate() const {
    if (source_mode != 1 && source_mode != 2) {
        throw ConfigError("source_mode must be 1 or 2, got " + std::to_string(source_mode));
    }
    if (evaluation.mode == EvalMode::monte_carlo && evaluation.trials < 1) {
        throw ConfigError("trials must be a positive integer");
    }
}

OutcomeDistribution run_filter_exact(const FilterConfig &cfg) {
    cfg.validate();
    Basis source = cfg.effective_source_basis();
    OutcomeDistribution d;
    for (int k = 0; k < 2; k++) {
        Coupling c = couple(cfg, source[k], cfg.noise);
        d.p_scatter += 0.5 * c.outcome.p_scatter;
        if (c.outcome.survivor) {
            auto born = born_distribution(partial_trace(*c.outcome.survivor, c.measured), cfg.analyzer_basis);
            d.p_click_b1 += 0.5 * c.outcome.p_survive() * born[0];
            d.p_click_b2 += 0.5 * c.outcome.p_survive() * born[1];
        }
    }
    d.conditional = normalized({d.p_click_b1, d.p_click_b2});
    return d;
}

OutcomeDistribution run_filter_mc(const FilterConfig &cfg) {
    cfg.validate();
    if (cfg.evaluation.mode != EvalMode::monte_carlo) {
        throw ConfigError("run_filter_mc needs a monte_carlo evaluation");
    }
    Basis source = cfg.effective_source_basis();

    // Per emitted state: bare scatter probability, analyzer statistics of the
    // bare survivor, and of the untouched emitted particle (fly-by).
    struct Branch {
        double p_scatter = 1.0;
        double p_b1_survivor = 0.0;
        double p_b1_flyby = 0.0;
    };
    std::array<Branch, 2> branches;
    for (int k = 0; k < 2; k++) {
        Coupling c = couple(cfg, source[k], NoiseParam());
        branches[k].p_scatter = c.outcome.p_scatter;
        if (c.outcome.survivor) {
            branches[k].p_b1_survivor =
                normalized(born_distribution(partial_trace(*c.outcome.survivor, c.measured), cfg.analyzer_basis))[0];
        }
        branches[k].p_b1_flyby = normalized(born_distribution(QubitDensity::pure(source[k]), cfg.analyzer_basis))[0];
    }

    const double q = cfg.noise.q();
    const std::uint64_t seed = cfg.evaluation.seed;
    auto counts = parallel_count<3>(cfg.evaluation.trials, cfg.evaluation.threads,
                                    [&](std::uint64_t begin, std::uint64_t end, std::array<std::uint64_t, 3> &acc) {
                                        for (std::uint64_t i = begin; i < end; i++) {
                                            SplitMix64 rng = SplitMix64::for_stream(seed, i);
                                            const Branch &b = branches[rng.uniform() < 0.5 ? 0 : 1];
                                            double p_b1;
                                            if (rng.uniform() < q) {
                                                p_b1 = b.p_b1_flyby;
                                            } else if (rng.uniform() < b.p_scatter) {
                                                acc[2]++;
                                                continue;
                                            } else {
                                                p_b1 = b.p_b1_survivor;
                                            }
                                            acc[rng.uniform() < p_b1 ? 0 : 1]++;
                                        }
                                    });
    return from_counts(counts, cfg.evaluation.trials);
}

OutcomeDistribution run_filter(const FilterConfig &cfg) {
    return cfg.evaluation.mode == EvalMode::exact ? run_filter_exact(cfg) : run_filter_mc(cfg);
}

OutcomeDistribution run_role_swapped(const FilterConfig &cfg) {
    FilterConfig swapped = cfg;
    swapped.roles = other(cfg.roles);
    return run_filter(swapped);
}

CorrelationResult run_correlation(const QubitState &probe, const QubitState &object, const Basis &basis,
                                  const RuleSpec &rule, NoiseParam noise) {
    CouplingOutcome out = apply_rule(rule, probe, object, noise);
    if (!out.survivor || out.p_survive() <= kNoSurvivors) {
        throw NoSurvivors("the pair scatters with certainty; there is no survivor to correlate");
    }
    CorrelationResult r;
    r.basis = basis;
    r.cells = joint_born_distribution(*out.survivor, basis, basis);
    r.aligned_weight = r.cells[0] + r.cells[3];
    return r;
}

CorrelationResult run_correlation_mc(const QubitState &probe, const QubitState &object, const Basis &basis,
                                     const RuleSpec &rule, NoiseParam noise, std::uint64_t trials,
                                     std::uint64_t seed) {
    if (trials < 1) {
        throw ConfigError("trials must be a positive integer");
    }
    CorrelationResult exact = run_correlation(probe, object, basis, rule, noise);
    std::array<double, 4> cdf{};
    double acc = 0;
    for (int k = 0; k < 4; k++) {
        acc += exact.cells[k];
        cdf[k] = acc;
    }
    for (double &c : cdf) {
        c /= acc;
    }
    // Each trial measures one surviving pair.
    auto counts = parallel_count<4>(trials, 1,
                                    [&](std::uint64_t begin, std::uint64_t end, std::array<std::uint64_t, 4> &hist) {
                                        for (std::uint64_t i = begin; i < end; i++) {
                                            double u = SplitMix64::for_stream(seed, i).uniform();
                                            int cell = 0;
                                            while (cell < 3 && u >= cdf[cell]) {
                                                cell++;
                                            }
                                            hist[cell]++;
                                        }
                                    });
    CorrelationResult r;
    r.basis = basis;
    for (int k = 0; k < 4; k++) {
        r.cells[k] = static_cast<double>(counts[k]) / static_cast<double>(trials);
    }
    r.aligned_weight = r.cells[0] + r.cells[3];
    r.counts = counts;
    return r;
}

FlipResult run_flip(const QubitState &probe, const QubitState &object, const RuleSpec &rule, NoiseParam noise) {
    CouplingOutcome out = apply_rule(rule, probe, object, noise);
    if (!out.survivor || out.p_survive() <= kNoSurvivors) {
        throw NoSurvivors("the pair scatters with certainty; there is no survivor to measure");
    }
    const Mat4 &rho = out.survivor->matrix();
    FlipResult r;
    r.p_survive = out.p_survive();
    for (int k = 0; k < 2; k++) {
        Mat2 block;
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                block(a, b) = rho(2 * k + a, 2 * k + b);
            }
        }
        double pk = std::clamp(block.trace().real(), 0.0, 1.0);
        r.probe_outcomes[k] = pk;
        if (pk > kNoSurvivors) {
            r.object_given_probe[k] = QubitDensity::from_matrix(block / pk);
        }
    }
    return r;
}

}  // namespace ifm
