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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ifm/io.hpp"

namespace ifm {
namespace {

namespace fs = std::filesystem;
using io::json;

class TempDir {
  public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("ifm_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

void write(const std::string &path, const std::string &text) { std::ofstream(path) << text; }

TEST(StateSpec, Names) {
    EXPECT_TRUE(io::parse_state_spec("sigma+").approx_equal(QubitState::sigma_plus(), 1e-15));
    EXPECT_TRUE(io::parse_state_spec(" d- ").approx_equal(QubitState::diag_minus(), 1e-15));
    EXPECT_TRUE(io::parse_state_spec("y").approx_equal(QubitState::y(), 1e-15));
}

TEST(StateSpec, AnglesAndAmplitudes) {
    EXPECT_TRUE(io::parse_state_spec("0,0").approx_equal(QubitState::x(), 1e-15));
    EXPECT_TRUE(io::parse_state_spec("1,0;0,0").approx_equal(QubitState::x(), 1e-15));
    EXPECT_TRUE(io::parse_state_spec("3.141592653589793, 0").approx_equal(QubitState::y(), 1e-12));
    EXPECT_TRUE(io::parse_state_spec("1,0;0,1").approx_equal(QubitState::sigma_plus(), 1e-12));
    EXPECT_TRUE(io::parse_state_spec("0,0;0,-3").approx_equal(QubitState::y(), 1e-15));
}

TEST(StateSpec, ErrorsCarryPosition) {
    try {
        io::parse_state_spec("1,0;0,abc");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 6u);
        EXPECT_NE(std::string(e.what()).find("sigma+"), std::string::npos);
    }
    try {
        io::parse_state_spec("  bogus");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 2u);
    }
    EXPECT_THROW(io::parse_state_spec(""), ParseError);
    EXPECT_THROW(io::parse_state_spec("1,2,3"), ParseError);
    EXPECT_THROW(io::parse_state_spec("1;2;3"), ParseError);
    EXPECT_THROW(io::parse_state_spec("0,0;0,0"), ZeroVector);
}

TEST(StateSpec, RoundTrip) {
    for (const char *s : {"x", "y", "sigma+", "sigma-", "d+", "d-"}) {
        EXPECT_EQ(io::state_spec(io::parse_state_spec(s)), s);
    }
    auto odd = QubitState::from_amplitudes({0.3, 0.1}, {-0.2, 0.9});
    EXPECT_TRUE(io::parse_state_spec(io::state_spec(odd)).approx_equal(odd, 1e-15));
}

TEST(BasisSpec, NamesAndStates) {
    EXPECT_EQ(io::parse_basis_spec("sigma").label(), BasisLabel::sigma);
    EXPECT_EQ(io::parse_basis_spec("d+").label(), BasisLabel::diag);
    auto b = io::parse_basis_spec("0.6,0;0.8,0");
    EXPECT_EQ(b.label(), BasisLabel::custom);
    EXPECT_TRUE(io::parse_basis_spec(io::basis_spec(b)).b1().approx_equal(b.b1(), 1e-15));
    EXPECT_THROW(io::parse_basis_spec("zz"), ParseError);
}

TEST(RuleName, BuiltinsAndParameters) {
    EXPECT_EQ(io::parse_rule_name("singlet").kind(), RuleKind::singlet);
    auto p = io::parse_rule_name("preferred-basis");
    EXPECT_EQ(p.basis()->label(), BasisLabel::sigma);
    auto c = io::parse_rule_name("coherent-projection:diag");
    EXPECT_EQ(c.basis()->label(), BasisLabel::diag);
    EXPECT_EQ(c.name(), "coherent-projection:diag");
    EXPECT_THROW(io::parse_rule_name("singlet:xy"), ParseError);
    EXPECT_THROW(io::parse_rule_name("nope"), ParseError);
    for (const auto &r : builtin_rules()) {
        EXPECT_EQ(io::parse_rule_name(r.name()).name(), r.name());
    }
}

TEST(CustomRule, LoadsAndValidates) {
    TempDir dir;
    json k = json::array();
    for (int r = 0; r < 4; r++) {
        json row = json::array();
        for (int c = 0; c < 4; c++) {
            row.push_back(json::array({r == c ? 1.0 : 0.0, 0.0}));
        }
        k.push_back(row);
    }
    write(dir.file("id.json"), json{{"name", "identity"}, {"survive_operator", k}}.dump());
    auto rule = io::resolve_rule(dir.file("id.json"));
    EXPECT_EQ(rule.kind(), RuleKind::custom);
    EXPECT_EQ(rule.name(), "identity");
    auto back = io::rule_from_json(io::rule_to_json(rule));
    EXPECT_EQ((back.survive_operator().value() - Mat4::Identity()).norm(), 0);

    json bad = k;
    bad[1][3] = json::array({1.0});
    try {
        io::custom_rule_from_json(json{{"name", "b"}, {"survive_operator", bad}});
        FAIL();
    } catch (const InvalidRule &e) {
        EXPECT_NE(std::string(e.what()).find("survive_operator[1][3]"), std::string::npos);
    }
    json big = k;
    for (int d = 0; d < 4; d++) big[d][d] = json::array({2.0, 0.0});
    EXPECT_THROW(io::custom_rule_from_json(json{{"name", "b"}, {"survive_operator", big}}), ContractionViolation);
    EXPECT_THROW(io::custom_rule_from_json(json{{"name", "b"}}), InvalidRule);
    EXPECT_THROW(io::custom_rule_from_json(json{{"name", "b"}, {"survive_operator", k}, {"x", 1}}), InvalidRule);
    EXPECT_THROW(io::resolve_rule(dir.file("missing.json")), ParseError);
}

TEST(FilterConfigJson, RoundTripAndStrictKeys) {
    FilterConfig cfg;
    cfg.roles = Roles::atom_probe;
    cfg.source_mode = 2;
    cfg.source_basis = Basis::diag();
    cfg.object_state = QubitState::sigma_minus();
    cfg.analyzer_basis = Basis::sigma();
    cfg.rule = RuleSpec::preferred_basis(Basis::xy());
    cfg.noise = NoiseParam(0.25);
    cfg.evaluation = Evaluation::monte_carlo(500, 9);
    json j = io::to_json(cfg);
    auto back = io::filter_config_from_json(j);
    EXPECT_EQ(io::to_json(back), j);
    EXPECT_EQ(j["evaluation"]["mode"], "monte_carlo");

    EXPECT_THROW(io::filter_config_from_json(json{{"typo", 1}}), ConfigError);
    EXPECT_THROW(io::filter_config_from_json(json{{"source_mode", 5}}), ConfigError);
    EXPECT_THROW(io::filter_config_from_json(json{{"object_state", "qq"}}), ConfigError);
    EXPECT_THROW(io::filter_config_from_json(json{{"noise", "high"}}), ConfigError);
    auto defaults = io::filter_config_from_json(json::object());
    EXPECT_EQ(defaults.rule.kind(), RuleKind::singlet);
}

TEST(AuditConfigJson, RoundTrip) {
    AuditConfig cfg;
    cfg.bases = {Basis::xy(), Basis::completing(QubitState::from_amplitudes(0.6, 0.8))};
    cfg.noise_levels = {0.1};
    cfg.seed = 77;
    json j = io::to_json(cfg);
    EXPECT_EQ(io::to_json(io::audit_config_from_json(j)), j);
    EXPECT_THROW(io::audit_config_from_json(json{{"epsilon_exact", -1.0}}), ConfigError);
}

TEST(ReportJson, AuditRoundTrip) {
    AuditConfig cfg;
    cfg.input_samples = 5;
    cfg.unitary_samples = 5;
    auto report = audit_rule(RuleSpec::random_mix(), cfg);
    json j = io::to_json(report);
    for (const char *key : {"rule", "checks", "overall_pass", "seed", "config", "evaluation", "noise_levels"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    auto back = io::audit_report_from_json(json::parse(io::dump(j)));
    EXPECT_EQ(io::to_json(back), j);
}

TEST(ReportJson, ExperimentResultsRoundTrip) {
    FilterConfig cfg;
    cfg.evaluation = Evaluation::monte_carlo(1000, 1);
    auto d = run_filter(cfg);
    EXPECT_EQ(io::to_json(io::outcome_from_json(io::to_json(d))), io::to_json(d));
    auto c = run_correlation(QubitState::y(), QubitState::x(), Basis::sigma(), RuleSpec::singlet());
    EXPECT_EQ(io::to_json(io::correlation_from_json(io::to_json(c))), io::to_json(c));
    auto f = run_flip(QubitState::y(), QubitState::x(), RuleSpec::object_rigid());
    EXPECT_EQ(io::to_json(io::flip_from_json(io::to_json(f))), io::to_json(f));
}

TEST(Csv, Histogram) {
    FilterConfig cfg;
    cfg.rule = RuleSpec::probe_rigid();
    cfg.source_mode = 2;
    auto exact = io::histogram_csv(run_filter(cfg));
    EXPECT_EQ(exact.substr(0, exact.find('\n')), "outcome,count,probability");
    std::istringstream lines(exact);
    std::string line;
    std::getline(lines, line);
    std::vector<std::string> names;
    std::vector<double> probs;
    while (std::getline(lines, line)) {
        auto a = line.find(',');
        auto b = line.find(',', a + 1);
        names.push_back(line.substr(0, a));
        EXPECT_EQ(b, a + 1) << "exact runs leave count empty";
        probs.push_back(std::stod(line.substr(b + 1)));
    }
    EXPECT_EQ(names, (std::vector<std::string>{"click_b1", "click_b2", "scatter"}));
    EXPECT_NEAR(probs[0], 0.25, 1e-12);
    EXPECT_NEAR(probs[2], 0.5, 1e-12);
    cfg.evaluation = Evaluation::monte_carlo(10, 1);
    auto mc = io::histogram_csv(run_filter(cfg));
    EXPECT_EQ(std::count(mc.begin(), mc.end(), '\n'), 4);
}

TEST(Files, AtomicWriteAndReadErrors) {
    TempDir dir;
    io::write_file_atomic(dir.file("a.json"), "{\"k\": 1}\n");
    EXPECT_EQ(io::read_json_file(dir.file("a.json"))["k"], 1);
    EXPECT_THROW(io::write_file_atomic(dir.file("no/such/dir/a.json"), "x"), ConfigError);
    EXPECT_FALSE(fs::exists(dir.file("no")));
    write(dir.file("broken.json"), "{");
    EXPECT_THROW(io::read_json_file(dir.file("broken.json")), ConfigError);
    EXPECT_THROW(io::read_json_file(dir.file("absent.json")), ConfigError);
    int leftovers = 0;
    for (const auto &e : fs::directory_iterator(dir.file(""))) {
        leftovers += e.path().string().find(".tmp.") != std::string::npos;
    }
    EXPECT_EQ(leftovers, 0);
}

}  // namespace
}  // namespace ifm
