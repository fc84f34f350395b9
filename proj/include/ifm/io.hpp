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

#include <string>
#include <string_view>

#include <json.hpp>

#include "ifm/audit.hpp"
#include "ifm/experiments.hpp"
#include "ifm/rules.hpp"

/// Text forms: state/basis/rule specs, JSON documents and CSV.
///
/// State specs: "x" "y" "sigma+" "sigma-" "d+" "d-", Bloch angles
/// "theta,phi" in radians, or amplitudes "re,im;re,im".
/// Basis specs: "xy" "sigma" "diag", or any state spec (completed to a basis).
/// Rule names: "probe-rigid" "object-rigid" "singlet" "random-mix"
/// "preferred-basis[:B]" (default sigma) "coherent-projection[:B]" (default xy).
namespace ifm::io {

using nlohmann::json;

QubitState parse_state_spec(std::string_view text);
/// Inverse of parse_state_spec up to rounding: a name when one matches,
/// otherwise amplitudes at full precision.
std::string state_spec(const QubitState &s);

Basis parse_basis_spec(std::string_view text);
std::string basis_spec(const Basis &b);

/// Built-in rule by name; throws ParseError for unknown names.
RuleSpec parse_rule_name(std::string_view text);
/// A built-in name, or else a path to a custom-rule document.
RuleSpec resolve_rule(const std::string &name_or_path);

/// {"name": ..., "survive_operator": 4x4 of [re, im], row-major, index 2*probe + object}.
/// Errors name the offending entry, e.g. "survive_operator[1][3]".
RuleSpec custom_rule_from_json(const json &doc);
RuleSpec load_custom_rule(const std::string &path);
/// Built-ins serialize to their name, custom rules to the document above.
json rule_to_json(const RuleSpec &rule);
RuleSpec rule_from_json(const json &j);

json to_json(const FilterConfig &cfg);
FilterConfig filter_config_from_json(const json &j);
json to_json(const AuditConfig &cfg);
AuditConfig audit_config_from_json(const json &j);

json to_json(const OutcomeDistribution &d);
OutcomeDistribution outcome_from_json(const json &j);
json to_json(const CorrelationResult &c);
CorrelationResult correlation_from_json(const json &j);
json to_json(const FlipResult &f);
FlipResult flip_from_json(const json &j);
json to_json(const CheckResult &c);
CheckResult check_from_json(const json &j);
json to_json(const AuditReport &r);
AuditReport audit_report_from_json(const json &j);

/// Columns outcome,count,probability; count is empty for exact runs.
std::string histogram_csv(const OutcomeDistribution &d);
std::string histogram_csv(const CorrelationResult &c);

json read_json_file(const std::string &path);
/// Stable formatting: 2-space indent, trailing newline.
std::string dump(const json &j);
/// Writes through a temporary sibling and renames, so a failed write never
/// leaves a partial file at `path`.
void write_file_atomic(const std::string &path, const std::string &content);

}  // namespace ifm::io
