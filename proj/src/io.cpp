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

#include "ifm/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unistd.h>

namespace ifm::io {

namespace {

constexpr const char *kStateForms = "expected x, y, sigma+, sigma-, d+, d-, 'theta,phi' (radians) or 're,im;re,im'";

// Shortest text that parses back to the same double.
std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// [begin, end) of text with surrounding spaces removed.
std::pair<std::size_t, std::size_t> trimmed(std::string_view text, std::size_t begin, std::size_t end) {
    while (begin < end && text[begin] == ' ') {
        begin++;
    }
    while (end > begin && text[end - 1] == ' ') {
        end--;
    }
    return {begin, end};
}

double parse_number(std::string_view text, std::size_t begin, std::size_t end) {
    auto [b, e] = trimmed(text, begin, end);
    double v = 0;
    auto res = std::from_chars(text.data() + b, text.data() + e, v);
    if (b == e || res.ec != std::errc() || res.ptr != text.data() + e) {
        std::size_t pos = b == e ? b : static_cast<std::size_t>(res.ptr - text.data());
        if (res.ec != std::errc()) {
            pos = b;
        }
        throw ParseError("state spec '" + std::string(text) + "': bad number at position " + std::to_string(pos) +
                             "; " + kStateForms,
                         pos);
    }
    return v;
}

// Splits [begin, end) at `sep`, returning piece boundaries.
std::vector<std::pair<std::size_t, std::size_t>> split(std::string_view text, std::size_t begin, std::size_t end,
                                                       char sep) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = begin;
    for (std::size_t k = begin; k < end; k++) {
        if (text[k] == sep) {
            out.emplace_back(start, k);
            start = k + 1;
        }
    }
    out.emplace_back(start, end);
    return out;
}

void expect_keys(const json &j, const std::set<std::string> &allowed, const std::string &context) {
    if (!j.is_object()) {
        throw ConfigError(context + ": expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(context + ": unknown field '" + key + "'");
        }
    }
}

template <typename T>
T get_field(const json &j, const std::string &key, const std::string &context) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(context + "." + key + ": " + e.what());
    }
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidRule(where + ": expected a [re, im] pair of numbers, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json mat2_to_json(const Mat2 &m) {
    json rows = json::array();
    for (int r = 0; r < 2; r++) {
        rows.push_back(json::array({complex_to_json(m(r, 0)), complex_to_json(m(r, 1))}));
    }
    return rows;
}

Mat2 mat2_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(where + ": expected 2 rows");
    }
    Mat2 m;
    for (int r = 0; r < 2; r++) {
        if (!j[r].is_array() || j[r].size() != 2) {
            throw ConfigError(where + "[" + std::to_string(r) + "]: expected 2 entries");
        }
        for (int c = 0; c < 2; c++) {
            m(r, c) = complex_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

std::string eval_mode_name(EvalMode m) { return m == EvalMode::exact ? "exact" : "monte_carlo"; }

EvalMode eval_mode_from(const std::string &s) {
    if (s == "exact") {
        return EvalMode::exact;
    }
    if (s == "monte_carlo" || s == "mc") {
        return EvalMode::monte_carlo;
    }
    throw ConfigError("unknown evaluation mode '" + s + "' (expected exact or monte_carlo)");
}

Roles roles_from(const std::string &s) {
    if (s == "photon-probe") {
        return Roles::photon_probe;
    }
    if (s == "atom-probe") {
        return Roles::atom_probe;
    }
    throw ConfigError("unknown roles '" + s + "' (expected photon-probe or atom-probe)");
}

template <typename T>
T wrap_parse(const std::function<T()> &fn, const std::string &context) {
    try {
        return fn();
    } catch (const ParseError &e) {
        throw ConfigError(context + ": " + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------- specs

QubitState parse_state_spec(std::string_view text) {
    auto [b, e] = trimmed(text, 0, text.size());
    if (b == e) {
        throw ParseError(std::string("empty state spec; ") + kStateForms, 0);
    }
    std::string_view t = text.substr(b, e - b);
    if (t == "x") return QubitState::x();
    if (t == "y") return QubitState::y();
    if (t == "sigma+") return QubitState::sigma_plus();
    if (t == "sigma-") return QubitState::sigma_minus();
    if (t == "d+") return QubitState::diag_plus();
    if (t == "d-") return QubitState::diag_minus();

    if (t.find(';') != std::string_view::npos) {
        auto halves = split(text, b, e, ';');
        if (halves.size() != 2) {
            std::size_t pos = halves[2].first - 1;
            throw ParseError("state spec '" + std::string(text) + "': too many ';' at position " +
                                 std::to_string(pos) + "; " + kStateForms,
                             pos);
        }
        std::array<Complex, 2> amps;
        for (int k = 0; k < 2; k++) {
            auto parts = split(text, halves[k].first, halves[k].second, ',');
            if (parts.size() != 2) {
                throw ParseError("state spec '" + std::string(text) + "': amplitude " + std::to_string(k) +
                                     " at position " + std::to_string(halves[k].first) + " is not 're,im'; " +
                                     kStateForms,
                                 halves[k].first);
            }
            amps[k] = {parse_number(text, parts[0].first, parts[0].second),
                       parse_number(text, parts[1].first, parts[1].second)};
        }
        return make_state(amps[0], amps[1]);
    }
    if (t.find(',') != std::string_view::npos) {
        auto parts = split(text, b, e, ',');
        if (parts.size() != 2) {
            std::size_t pos = parts[2].first - 1;
            throw ParseError("state spec '" + std::string(text) + "': too many ',' at position " +
                                 std::to_string(pos) + "; " + kStateForms,
                             pos);
        }
        return from_bloch_angles(parse_number(text, parts[0].first, parts[0].second),
                                 parse_number(text, parts[1].first, parts[1].second));
    }
    throw ParseError("state spec '" + std::string(text) + "': unknown state at position " + std::to_string(b) +
                         "; " + kStateForms,
                     b);
}

std::string state_spec(const QubitState &s) {
    std::string label = state_label(s);
    if (label.front() != '(') {
        return label;
    }
    return shortest(s[0].real()) + "," + shortest(s[0].imag()) + ";" + shortest(s[1].real()) + "," + shortest(s[1].imag());
}

Basis parse_basis_spec(std::string_view text) {
    auto [b, e] = trimmed(text, 0, text.size());
    std::string_view t = text.substr(b, e - b);
    if (t == "xy") return Basis::xy();
    if (t == "sigma") return Basis::sigma();
    if (t == "diag") return Basis::diag();
    try {
        return Basis::completing(parse_state_spec(text));
    } catch (const ParseError &err) {
        throw ParseError("basis spec '" + std::string(text) + "': expected xy, sigma, diag or a state spec for b1 (" +
                             err.what() + ")",
                         err.position());
    }
}

std::string basis_spec(const Basis &b) {
    if (b.label() != BasisLabel::custom) {
        return b.name();
    }
    return state_spec(b.b1());
}

RuleSpec parse_rule_name(std::string_view text) {
    std::string s(text);
    std::string head = s.substr(0, s.find(':'));
    std::optional<std::string> arg;
    if (s.find(':') != std::string::npos) {
        arg = s.substr(s.find(':') + 1);
    }
    auto no_arg = [&](RuleSpec r) {
        if (arg) {
            throw ParseError("rule '" + s + "' takes no basis argument", head.size());
        }
        return r;
    };
    if (head == "probe-rigid") return no_arg(RuleSpec::probe_rigid());
    if (head == "object-rigid") return no_arg(RuleSpec::object_rigid());
    if (head == "singlet") return no_arg(RuleSpec::singlet());
    if (head == "random-mix") return no_arg(RuleSpec::random_mix());
    if (head == "preferred-basis") {
        return RuleSpec::preferred_basis(arg ? parse_basis_spec(*arg) : Basis::sigma());
    }
    if (head == "coherent-projection") {
        return RuleSpec::coherent_projection(arg ? parse_basis_spec(*arg) : Basis::xy());
    }
    throw ParseError("unknown rule '" + s +
                         "'; expected probe-rigid, object-rigid, singlet, random-mix, preferred-basis[:B], "
                         "coherent-projection[:B] or a custom-rule file",
                     0);
}

RuleSpec resolve_rule(const std::string &name_or_path) {
    try {
        return parse_rule_name(name_or_path);
    } catch (const ParseError &) {
        if (std::filesystem::is_regular_file(name_or_path)) {
            return load_custom_rule(name_or_path);
        }
        throw;
    }
}

RuleSpec custom_rule_from_json(const json &doc) {
    if (!doc.is_object()) {
        throw InvalidRule("custom rule: expected an object with fields name and survive_operator");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "name" && key != "survive_operator") {
            throw InvalidRule("custom rule: unknown field '" + key + "'");
        }
    }
    if (!doc.contains("name") || !doc["name"].is_string()) {
        throw InvalidRule("custom rule: field 'name' must be a string");
    }
    if (!doc.contains("survive_operator")) {
        throw InvalidRule("custom rule: missing field 'survive_operator'");
    }
    const json &k = doc["survive_operator"];
    if (!k.is_array() || k.size() != 4) {
        throw InvalidRule("survive_operator: expected 4 rows, got " + (k.is_array() ? std::to_string(k.size()) : k.dump()));
    }
    Mat4 m;
    for (int r = 0; r < 4; r++) {
        std::string row = "survive_operator[" + std::to_string(r) + "]";
        if (!k[r].is_array() || k[r].size() != 4) {
            throw InvalidRule(row + ": expected 4 entries");
        }
        for (int c = 0; c < 4; c++) {
            m(r, c) = complex_from_json(k[r][c], row + "[" + std::to_string(c) + "]");
        }
    }
    return validate_custom_rule(m, doc["name"].get<std::string>());
}

RuleSpec load_custom_rule(const std::string &path) {
    json doc;
    try {
        doc = read_json_file(path);
    } catch (const ConfigError &e) {
        throw InvalidRule(e.what());
    }
    return custom_rule_from_json(doc);
}

json rule_to_json(const RuleSpec &rule) {
    if (rule.kind() != RuleKind::custom) {
        if (rule.basis() && rule.basis()->label() == BasisLabel::custom) {
            std::string head = rule.kind() == RuleKind::preferred_basis ? "preferred-basis" : "coherent-projection";
            return head + ":" + basis_spec(*rule.basis());
        }
        return rule.name();
    }
    json k = json::array();
    const Mat4 &op = *rule.survive_operator();
    for (int r = 0; r < 4; r++) {
        json row = json::array();
        for (int c = 0; c < 4; c++) {
            row.push_back(complex_to_json(op(r, c)));
        }
        k.push_back(row);
    }
    return json{{"name", rule.name()}, {"survive_operator", k}};
}

RuleSpec rule_from_json(const json &j) {
    if (j.is_string()) {
        return resolve_rule(j.get<std::string>());
    }
    return custom_rule_from_json(j);
}

// ---------------------------------------------------------------- configs

json to_json(const FilterConfig &cfg) {
    json eval = {{"mode", eval_mode_name(cfg.evaluation.mode)}};
    if (cfg.evaluation.mode == EvalMode::monte_carlo) {
        eval["trials"] = cfg.evaluation.trials;
        eval["seed"] = cfg.evaluation.seed;
    }
    return json{{"roles", to_string(cfg.roles)},
                {"source_mode", cfg.source_mode},
                {"source_basis", basis_spec(cfg.effective_source_basis())},
                {"object_state", state_spec(cfg.object_state)},
                {"analyzer_basis", basis_spec(cfg.analyzer_basis)},
                {"rule", rule_to_json(cfg.rule)},
                {"noise", cfg.noise.q()},
                {"evaluation", eval}};
}

FilterConfig filter_config_from_json(const json &j) {
    const std::string ctx = "filter config";
    expect_keys(j, {"roles", "source_mode", "source_basis", "object_state", "analyzer_basis", "rule", "noise",
                    "evaluation"},
                ctx);
    FilterConfig cfg;
    if (j.contains("roles")) cfg.roles = roles_from(get_field<std::string>(j, "roles", ctx));
    if (j.contains("source_mode")) cfg.source_mode = get_field<int>(j, "source_mode", ctx);
    if (j.contains("source_basis")) {
        auto s = get_field<std::string>(j, "source_basis", ctx);
        cfg.source_basis = wrap_parse<Basis>([&] { return parse_basis_spec(s); }, ctx + ".source_basis");
    }
    if (j.contains("object_state")) {
        auto s = get_field<std::string>(j, "object_state", ctx);
        cfg.object_state = wrap_parse<QubitState>([&] { return parse_state_spec(s); }, ctx + ".object_state");
    }
    if (j.contains("analyzer_basis")) {
        auto s = get_field<std::string>(j, "analyzer_basis", ctx);
        cfg.analyzer_basis = wrap_parse<Basis>([&] { return parse_basis_spec(s); }, ctx + ".analyzer_basis");
    }
    if (j.contains("rule")) {
        cfg.rule = wrap_parse<RuleSpec>([&] { return rule_from_json(j["rule"]); }, ctx + ".rule");
    }
    if (j.contains("noise")) cfg.noise = NoiseParam(get_field<double>(j, "noise", ctx));
    if (j.contains("evaluation")) {
        const json &e = j["evaluation"];
        expect_keys(e, {"mode", "trials", "seed"}, ctx + ".evaluation");
        if (e.contains("mode")) cfg.evaluation.mode = eval_mode_from(get_field<std::string>(e, "mode", ctx));
        if (e.contains("trials")) cfg.evaluation.trials = get_field<std::uint64_t>(e, "trials", ctx);
        if (e.contains("seed")) cfg.evaluation.seed = get_field<std::uint64_t>(e, "seed", ctx);
    }
    cfg.validate();
    return cfg;
}

json to_json(const AuditConfig &cfg) {
    json bases = json::array();
    for (const auto &b : cfg.bases) {
        bases.push_back(basis_spec(b));
    }
    return json{{"bases", bases},
                {"epsilon_exact", cfg.epsilon_exact},
                {"epsilon_mc", cfg.epsilon_mc},
                {"unitary_samples", cfg.unitary_samples},
                {"input_samples", cfg.input_samples},
                {"noise_levels", cfg.noise_levels},
                {"seed", cfg.seed},
                {"mode", eval_mode_name(cfg.mode)},
                {"trials", cfg.trials}};
}

AuditConfig audit_config_from_json(const json &j) {
    const std::string ctx = "audit config";
    expect_keys(j, {"bases", "epsilon_exact", "epsilon_mc", "unitary_samples", "input_samples", "noise_levels",
                    "seed", "mode", "trials"},
                ctx);
    AuditConfig cfg;
    if (j.contains("bases")) {
        cfg.bases.clear();
        for (const auto &s : get_field<std::vector<std::string>>(j, "bases", ctx)) {
            cfg.bases.push_back(wrap_parse<Basis>([&] { return parse_basis_spec(s); }, ctx + ".bases"));
        }
    }
    if (j.contains("epsilon_exact")) cfg.epsilon_exact = get_field<double>(j, "epsilon_exact", ctx);
    if (j.contains("epsilon_mc")) cfg.epsilon_mc = get_field<double>(j, "epsilon_mc", ctx);
    if (j.contains("unitary_samples")) cfg.unitary_samples = get_field<int>(j, "unitary_samples", ctx);
    if (j.contains("input_samples")) cfg.input_samples = get_field<int>(j, "input_samples", ctx);
    if (j.contains("noise_levels")) cfg.noise_levels = get_field<std::vector<double>>(j, "noise_levels", ctx);
    if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed", ctx);
    if (j.contains("mode")) cfg.mode = eval_mode_from(get_field<std::string>(j, "mode", ctx));
    if (j.contains("trials")) cfg.trials = get_field<std::uint64_t>(j, "trials", ctx);
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------- results

json to_json(const OutcomeDistribution &d) {
    json j{{"p_click_b1", d.p_click_b1},
           {"p_click_b2", d.p_click_b2},
           {"p_scatter", d.p_scatter},
           {"conditional_on_survival", d.conditional}};
    if (d.counts) {
        j["counts"] = {{"click_b1", (*d.counts)[0]}, {"click_b2", (*d.counts)[1]}, {"scatter", (*d.counts)[2]}};
    }
    return j;
}

OutcomeDistribution outcome_from_json(const json &j) {
    const std::string ctx = "distribution";
    expect_keys(j, {"p_click_b1", "p_click_b2", "p_scatter", "conditional_on_survival", "counts"}, ctx);
    OutcomeDistribution d;
    d.p_click_b1 = get_field<double>(j, "p_click_b1", ctx);
    d.p_click_b2 = get_field<double>(j, "p_click_b2", ctx);
    d.p_scatter = get_field<double>(j, "p_scatter", ctx);
    d.conditional = get_field<std::array<double, 2>>(j, "conditional_on_survival", ctx);
    if (j.contains("counts")) {
        const json &c = j["counts"];
        d.counts = std::array<std::uint64_t, 3>{get_field<std::uint64_t>(c, "click_b1", ctx),
                                                get_field<std::uint64_t>(c, "click_b2", ctx),
                                                get_field<std::uint64_t>(c, "scatter", ctx)};
    }
    return d;
}

json to_json(const CorrelationResult &c) {
    json j{{"basis", basis_spec(c.basis)},
           {"cells", {{"b1b1", c.cells[0]}, {"b1b2", c.cells[1]}, {"b2b1", c.cells[2]}, {"b2b2", c.cells[3]}}},
           {"aligned_weight", c.aligned_weight}};
    if (c.counts) {
        j["counts"] = {{"b1b1", (*c.counts)[0]}, {"b1b2", (*c.counts)[1]}, {"b2b1", (*c.counts)[2]}, {"b2b2", (*c.counts)[3]}};
    }
    return j;
}

CorrelationResult correlation_from_json(const json &j) {
    const std::string ctx = "correlation";
    expect_keys(j, {"basis", "cells", "aligned_weight", "counts"}, ctx);
    CorrelationResult c;
    c.basis = wrap_parse<Basis>([&] { return parse_basis_spec(get_field<std::string>(j, "basis", ctx)); }, ctx);
    static const char *keys[] = {"b1b1", "b1b2", "b2b1", "b2b2"};
    for (int k = 0; k < 4; k++) {
        c.cells[k] = get_field<double>(j.at("cells"), keys[k], ctx + ".cells");
    }
    c.aligned_weight = get_field<double>(j, "aligned_weight", ctx);
    if (j.contains("counts")) {
        std::array<std::uint64_t, 4> counts{};
        for (int k = 0; k < 4; k++) {
            counts[k] = get_field<std::uint64_t>(j["counts"], keys[k], ctx + ".counts");
        }
        c.counts = counts;
    }
    return c;
}

json to_json(const FlipResult &f) {
    json given = json::array();
    for (const auto &rho : f.object_given_probe) {
        given.push_back(rho ? mat2_to_json(rho->matrix()) : json(nullptr));
    }
    return json{{"p_survive", f.p_survive}, {"probe_outcomes", f.probe_outcomes}, {"object_given_probe", given}};
}

FlipResult flip_from_json(const json &j) {
    const std::string ctx = "flip";
    expect_keys(j, {"p_survive", "probe_outcomes", "object_given_probe"}, ctx);
    FlipResult f;
    f.p_survive = get_field<double>(j, "p_survive", ctx);
    f.probe_outcomes = get_field<std::array<double, 2>>(j, "probe_outcomes", ctx);
    const json &given = j.at("object_given_probe");
    for (int k = 0; k < 2; k++) {
        if (!given.at(k).is_null()) {
            f.object_given_probe[k] =
                QubitDensity::from_matrix(mat2_from_json(given[k], ctx + ".object_given_probe[" + std::to_string(k) + "]"));
        }
    }
    return f;
}

json to_json(const CheckResult &c) {
    return json{{"check_id", to_string(c.id)},     {"passed", c.passed},   {"metric", c.metric},
                {"threshold", c.threshold},        {"witness", c.witness}, {"details", c.details},
                {"notes", c.notes}};
}

CheckResult check_from_json(const json &j) {
    const std::string ctx = "check";
    expect_keys(j, {"check_id", "passed", "metric", "threshold", "witness", "details", "notes"}, ctx);
    CheckResult c;
    c.id = check_id_from_string(get_field<std::string>(j, "check_id", ctx));
    c.passed = get_field<bool>(j, "passed", ctx);
    c.metric = get_field<double>(j, "metric", ctx);
    c.threshold = get_field<double>(j, "threshold", ctx);
    c.witness = get_field<std::string>(j, "witness", ctx);
    c.details = get_field<std::map<std::string, double>>(j, "details", ctx);
    c.notes = get_field<std::vector<std::string>>(j, "notes", ctx);
    return c;
}

json to_json(const AuditReport &r) {
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back(to_json(c));
    }
    json j{{"rule", r.rule},
           {"overall_pass", r.overall_pass},
           {"evaluation", eval_mode_name(r.config.mode)},
           {"noise_levels", r.config.noise_levels},
           {"seed", r.config.seed},
           {"checks", checks},
           {"config", to_json(r.config)}};
    return j;
}

AuditReport audit_report_from_json(const json &j) {
    const std::string ctx = "audit report";
    expect_keys(j, {"rule", "overall_pass", "evaluation", "noise_levels", "seed", "checks", "config"}, ctx);
    AuditReport r;
    r.rule = get_field<std::string>(j, "rule", ctx);
    r.overall_pass = get_field<bool>(j, "overall_pass", ctx);
    r.config = audit_config_from_json(j.at("config"));
    for (const auto &c : j.at("checks")) {
        r.checks.push_back(check_from_json(c));
    }
    return r;
}

std::string histogram_csv(const OutcomeDistribution &d) {
    std::ostringstream out;
    out << "outcome,count,probability\n";
    static const char *names[] = {"click_b1", "click_b2", "scatter"};
    auto p = d.as_array();
    for (int k = 0; k < 3; k++) {
        out << names[k] << "," << (d.counts ? std::to_string((*d.counts)[k]) : "") << "," << shortest(p[k]) << "\n";
    }
    return out.str();
}

std::string histogram_csv(const CorrelationResult &c) {
    std::ostringstream out;
    out << "outcome,count,probability\n";
    static const char *names[] = {"b1b1", "b1b2", "b2b1", "b2b2"};
    for (int k = 0; k < 4; k++) {
        out << names[k] << "," << (c.counts ? std::to_string((*c.counts)[k]) : "") << "," << shortest(c.cells[k]) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------- files

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write '" + path + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ConfigError("failed writing '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("cannot move output into '" + path + "'");
    }
}

}  // namespace ifm::io
