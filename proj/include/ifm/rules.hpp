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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ifm/qcore.hpp"

namespace ifm {

enum class RuleKind {
    probe_rigid,
    object_rigid,
    singlet,
    random_mix,
    preferred_basis,
    coherent_projection,
    custom,
};

/// Result of one coupling event. `survivor` is absent iff the event
/// scatters with certainty (survive probability <= 1e-12).
struct CouplingOutcome {
    double p_scatter = 1.0;
    std::optional<JointDensity> survivor;

    double p_survive() const { return 1.0 - p_scatter; }
};

/// Fly-by probability: the pair passes without coupling at all.
class NoiseParam {
  public:
    NoiseParam() = default;
    explicit NoiseParam(double q);
    double q() const { return q_; }

  private:
    double q_ = 0.0;
};

/// Coupling law before noise. Implementations see the product input and its
/// two factors and report the scatter probability and survivor.
class CouplingLaw {
  public:
    virtual ~CouplingLaw() = default;
    virtual CouplingOutcome couple(const QubitState &probe, const QubitState &object) const = 0;
};

/// A candidate non-interaction rule. Cheap to copy; the law it carries is
/// immutable and shared.
class RuleSpec {
  public:
    static RuleSpec probe_rigid();
    static RuleSpec object_rigid();
    static RuleSpec singlet();
    static RuleSpec random_mix();
    static RuleSpec preferred_basis(const Basis &b);
    static RuleSpec coherent_projection(const Basis &b);

    RuleKind kind() const { return kind_; }
    const std::string &name() const { return name_; }
    /// Set for preferred_basis and coherent_projection.
    const std::optional<Basis> &basis() const { return basis_; }
    /// Set for custom rules.
    const std::optional<Mat4> &survive_operator() const { return survive_op_; }
    const CouplingLaw &law() const { return *law_; }

    /// True when the no-noise scatter probability is the interaction
    /// probability of the inputs.
    bool universal_scatter_law() const;

  private:
    friend RuleSpec validate_custom_rule(const Mat4 &k, std::string name);
    RuleSpec(RuleKind kind, std::string name, std::shared_ptr<const CouplingLaw> law)
        : kind_(kind), name_(std::move(name)), law_(std::move(law)) {}

    RuleKind kind_;
    std::string name_;
    std::shared_ptr<const CouplingLaw> law_;
    std::optional<Basis> basis_;
    std::optional<Mat4> survive_op_;
};

/// The six built-in rules, preferred_basis over sigma and
/// coherent_projection over xy.
std::vector<RuleSpec> builtin_rules();

/// Accepts K iff I - K^dagger K is PSD within 1e-9; otherwise throws
/// ContractionViolation carrying the most negative eigenvalue.
RuleSpec validate_custom_rule(const Mat4 &k, std::string name = "custom");

/// The probe state that interacts with `object` with certainty. Probe and
/// object share the x<->x, y<->y correspondence, so this is the identity on
/// amplitudes.
QubitState aligned_state(const QubitState &object);

/// |<aligned_state(object)|probe>|^2.
double interaction_probability(const QubitState &probe, const QubitState &object);

/// One coupling event with fly-by noise folded in:
///   p_scatter = (1-q) p0
///   survivor  = [q rho_in + (1-q)(1-p0) survivor0] / [q + (1-q)(1-p0)]
CouplingOutcome apply_rule(const RuleSpec &rule, const QubitState &probe, const QubitState &object,
                           NoiseParam noise = NoiseParam());

/// apply_rule with the two particles' arguments exchanged, reported back in
/// (probe, object) slot order.
CouplingOutcome swapped_channel(const RuleSpec &rule, const QubitState &probe, const QubitState &object,
                                NoiseParam noise = NoiseParam());

}  // namespace ifm
