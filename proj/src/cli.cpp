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

#include "ifm/cli.hpp"

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "ifm/audit.hpp"
#include "ifm/io.hpp"

namespace ifm {

namespace {

using io::json;

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

void emit(const std::string &body, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << body;
    } else {
        io::write_file_atomic(path, body);
    }
}

EvalMode mode_from_flag(const std::string &s) { return s == "mc" ? EvalMode::monte_carlo : EvalMode::exact; }

json evaluation_json(EvalMode mode, std::uint64_t trials, std::uint64_t seed) {
    if (mode == EvalMode::exact) {
        return json{{"mode", "exact"}};
    }
    return json{{"mode", "monte_carlo"}, {"trials", trials}, {"seed", seed}};
}

const char *rule_summary(RuleKind kind) {
    switch (kind) {
        case RuleKind::probe_rigid:
            return "probe keeps its state; object is left orthogonal to it";
        case RuleKind::object_rigid:
            return "object keeps its state; probe is left orthogonal to it";
        case RuleKind::singlet:
            return "survivors are left in the two-particle singlet";
        case RuleKind::random_mix:
            return "survivors are left maximally mixed";
        case RuleKind::preferred_basis:
            return "survivors dephased onto the anti-aligned pairs of a fixed basis";
        case RuleKind::coherent_projection:
            return "coherent removal of the aligned pairs of a fixed basis";
        case RuleKind::custom:
            return "user-supplied survive operator";
    }
    return "";
}

struct Common {
    std::string rule = "singlet";
    std::string mode = "exact";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    double noise_q = 0;
    std::string report;
    std::string csv;
    std::string config;
};

CLI::Option *add_rule(CLI::App *app, Common &c) {
    return app->add_option("--rule", c.rule, "Built-in rule name or path to a custom-rule JSON file")
        ->capture_default_str();
}

CLI::Option *add_mode(CLI::App *app, Common &c) {
    return app->add_option("--mode", c.mode, "Evaluation: exact or mc (Monte Carlo)")
        ->check(CLI::IsMember({"exact", "mc"}))
        ->capture_default_str();
}

CLI::Option *add_trials(CLI::App *app, Common &c) {
    return app->add_option("--trials", c.trials, "Monte Carlo trials per configuration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

CLI::Option *add_seed(CLI::App *app, Common &c) {
    return app->add_option("--seed", c.seed, "Random seed (default from IFM_SEED, else 42)")
        ->envname("IFM_SEED")
        ->capture_default_str();
}

CLI::Option *add_noise(CLI::App *app, Common &c) {
    return app->add_option("--noise-q", c.noise_q, "Fly-by probability q in [0, 1]")->check(CLI::Range(0.0, 1.0));
}

int run_audit(const Common &c, CLI::App *cmd, std::ostream &out) {
    AuditConfig cfg;
    if (!c.config.empty()) {
        cfg = io::audit_config_from_json(io::read_json_file(c.config));
    }
    if (cmd->count("--mode") || c.config.empty()) cfg.mode = mode_from_flag(c.mode);
    if (cmd->count("--trials") || c.config.empty()) cfg.trials = c.trials;
    if (cmd->get_option("--seed")->count() || c.config.empty()) cfg.seed = c.seed;
    if (cmd->count("--noise-q")) cfg.noise_levels = {c.noise_q};
    cfg.validate();

    AuditReport report = audit_rule(io::resolve_rule(c.rule), cfg);
    emit(io::dump(io::to_json(report)), c.report, out);
    if (!c.report.empty()) {
        out << report.rule << ": " << (report.overall_pass ? "PASS" : "FAIL");
        for (const auto &chk : report.checks) {
            out << "  " << to_string(chk.id) << "=" << (chk.passed ? "pass" : "fail");
        }
        out << "\n";
    }
    return kExitOk;
}

struct FilterFlags {
    int source_mode = 1;
    std::string source_basis;
    std::string object_state = "x";
    std::string analyzer_basis = "xy";
    std::string roles = "photon-probe";
};

int run_filter_cmd(const Common &c, const FilterFlags &f, CLI::App *cmd, std::ostream &out) {
    FilterConfig cfg;
    bool fresh = c.config.empty();
    if (!fresh) {
        cfg = io::filter_config_from_json(io::read_json_file(c.config));
    }
    if (cmd->count("--source-mode") || fresh) cfg.source_mode = f.source_mode;
    if (cmd->count("--source-basis")) cfg.source_basis = io::parse_basis_spec(f.source_basis);
    if (cmd->count("--object-state") || fresh) cfg.object_state = io::parse_state_spec(f.object_state);
    if (cmd->count("--analyzer-basis") || fresh) cfg.analyzer_basis = io::parse_basis_spec(f.analyzer_basis);
    if (cmd->count("--roles") || fresh) cfg.roles = f.roles == "atom-probe" ? Roles::atom_probe : Roles::photon_probe;
    if (cmd->count("--rule") || fresh) cfg.rule = io::resolve_rule(c.rule);
    if (cmd->count("--noise-q")) cfg.noise = NoiseParam(c.noise_q);
    if (cmd->count("--mode") || fresh) cfg.evaluation.mode = mode_from_flag(c.mode);
    if (cmd->count("--trials") || fresh) cfg.evaluation.trials = c.trials;
    if (cmd->get_option("--seed")->count() || fresh) cfg.evaluation.seed = c.seed;
    cfg.validate();

    OutcomeDistribution d = run_filter(cfg);
    json doc{{"experiment", "filter"}, {"config", io::to_json(cfg)}, {"distribution", io::to_json(d)}};
    if (!c.csv.empty()) {
        io::write_file_atomic(c.csv, io::histogram_csv(d));
    }
    emit(io::dump(doc), c.report, out);
    return kExitOk;
}

struct PairFlags {
    std::string probe = "y";
    std::string object = "x";
    std::string basis = "sigma";
};

int run_correlate_cmd(const Common &c, const PairFlags &p, std::ostream &out) {
    QubitState probe = io::parse_state_spec(p.probe);
    QubitState object = io::parse_state_spec(p.object);
    Basis basis = io::parse_basis_spec(p.basis);
    RuleSpec rule = io::resolve_rule(c.rule);
    NoiseParam noise(c.noise_q);
    EvalMode mode = mode_from_flag(c.mode);
    CorrelationResult r = mode == EvalMode::exact
                              ? run_correlation(probe, object, basis, rule, noise)
                              : run_correlation_mc(probe, object, basis, rule, noise, c.trials, c.seed);
    json doc{{"experiment", "correlate"},
             {"probe", io::state_spec(probe)},
             {"object", io::state_spec(object)},
             {"rule", io::rule_to_json(rule)},
             {"noise", noise.q()},
             {"evaluation", evaluation_json(mode, c.trials, c.seed)},
             {"result", io::to_json(r)}};
    if (!c.csv.empty()) {
        io::write_file_atomic(c.csv, io::histogram_csv(r));
    }
    emit(io::dump(doc), c.report, out);
    return kExitOk;
}

int run_flip_cmd(const Common &c, const PairFlags &p, std::ostream &out) {
    QubitState probe = io::parse_state_spec(p.probe);
    QubitState object = io::parse_state_spec(p.object);
    RuleSpec rule = io::resolve_rule(c.rule);
    NoiseParam noise(c.noise_q);
    FlipResult r = run_flip(probe, object, rule, noise);
    json doc{{"experiment", "flip"},
             {"probe", io::state_spec(probe)},
             {"object", io::state_spec(object)},
             {"rule", io::rule_to_json(rule)},
             {"noise", noise.q()},
             {"result", io::to_json(r)}};
    emit(io::dump(doc), c.report, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app("Consistency audits and experiments for two-qubit non-interaction rules", "ifm");
    app.require_subcommand(1);

    Common audit_c;
    CLI::App *audit = app.add_subcommand("audit", "Run the C1-C4 consistency checks on a rule");
    add_rule(audit, audit_c);
    add_mode(audit, audit_c);
    add_trials(audit, audit_c);
    add_seed(audit, audit_c);
    audit->add_option("--noise-q", audit_c.noise_q, "Audit at this single fly-by probability instead of {0, 0.5}")
        ->check(CLI::Range(0.0, 1.0));
    audit->add_option("--report", audit_c.report, "Write the JSON report here instead of stdout");
    audit->add_option("--config", audit_c.config, "AuditConfig JSON document; flags override its fields")
        ->check(CLI::ExistingFile);

    CLI::App *run = app.add_subcommand("run", "Run a single experiment");
    run->require_subcommand(1);

    Common filter_c;
    FilterFlags filter_f;
    CLI::App *filter = run->add_subcommand("filter", "Source, filter and analyzer statistics");
    filter->add_option("--source-mode", filter_f.source_mode, "1: object eigenbasis source; 2: conjugate source")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    filter->add_option("--source-basis", filter_f.source_basis, "Override the source basis (xy, sigma, diag or a state)");
    filter->add_option("--object-state", filter_f.object_state, "State held in the filter")->capture_default_str();
    filter->add_option("--analyzer-basis", filter_f.analyzer_basis, "Analyzer basis")->capture_default_str();
    filter->add_option("--roles", filter_f.roles, "Which particle the source emits")
        ->check(CLI::IsMember({"photon-probe", "atom-probe"}))
        ->capture_default_str();
    add_rule(filter, filter_c);
    add_noise(filter, filter_c);
    add_mode(filter, filter_c);
    add_trials(filter, filter_c);
    add_seed(filter, filter_c);
    filter->add_option("--csv", filter_c.csv, "Write the per-detector histogram CSV here");
    filter->add_option("--report", filter_c.report, "Write the JSON report here instead of stdout");
    filter->add_option("--config", filter_c.config, "FilterConfig JSON document; flags override its fields")
        ->check(CLI::ExistingFile);

    Common corr_c;
    PairFlags corr_p;
    CLI::App *correlate = run->add_subcommand("correlate", "Joint statistics of the survivors in one basis");
    correlate->add_option("--probe", corr_p.probe, "Probe state")->capture_default_str();
    correlate->add_option("--object", corr_p.object, "Object state")->capture_default_str();
    correlate->add_option("--basis", corr_p.basis, "Measurement basis for both particles")->capture_default_str();
    add_rule(correlate, corr_c);
    add_noise(correlate, corr_c);
    add_mode(correlate, corr_c);
    add_trials(correlate, corr_c);
    add_seed(correlate, corr_c);
    correlate->add_option("--csv", corr_c.csv, "Write the joint histogram CSV here");
    correlate->add_option("--report", corr_c.report, "Write the JSON report here instead of stdout");

    Common flip_c;
    PairFlags flip_p;
    CLI::App *flip = run->add_subcommand("flip", "Measure the surviving probe in xy and condition the object");
    flip->add_option("--probe", flip_p.probe, "Probe state")->capture_default_str();
    flip->add_option("--object", flip_p.object, "Object state")->capture_default_str();
    add_rule(flip, flip_c);
    add_noise(flip, flip_c);
    flip->add_option("--report", flip_c.report, "Write the JSON report here instead of stdout");

    CLI::App *rules = app.add_subcommand("rules", "Inspect rules");
    rules->require_subcommand(1);
    CLI::App *list = rules->add_subcommand("list", "List the built-in rules");
    std::string validate_path;
    CLI::App *validate = rules->add_subcommand("validate", "Check a custom-rule JSON file");
    validate->add_option("file", validate_path, "Custom-rule document")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitUsage;
    }

    try {
        if (audit->parsed()) {
            return run_audit(audit_c, audit, out);
        }
        if (filter->parsed()) {
            return run_filter_cmd(filter_c, filter_f, filter, out);
        }
        if (correlate->parsed()) {
            return run_correlate_cmd(corr_c, corr_p, out);
        }
        if (flip->parsed()) {
            return run_flip_cmd(flip_c, flip_p, out);
        }
        if (list->parsed()) {
            for (const auto &r : builtin_rules()) {
                out << r.name() << "\t" << rule_summary(r.kind()) << "\n";
            }
            return kExitOk;
        }
        if (validate->parsed()) {
            RuleSpec r = io::load_custom_rule(validate_path);
            out << "ok: custom rule '" << r.name() << "' is a valid survive operator\n";
            return kExitOk;
        }
    } catch (const Error &e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitUsage;
    } catch (const io::json::exception &e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << one_line(e.what()) << "\n";
        return kExitInternal;
    }
    err << "internal error: no command dispatched\n";
    return kExitInternal;
}

int run_cli(int argc, const char *const *argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; i++) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace ifm
