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

#include "ifm/rules.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ifm {

namespace {

constexpr double kDegenerate = 1e-12;

CouplingOutcome certain_scatter() { return CouplingOutcome{1.0, std::nullopt}; }

// Survivor is a fixed function of the inputs; scatter follows the
// interaction probability.
class UniversalLaw : public CouplingLaw {
  public:
    CouplingOutcome couple(const QubitState &probe, const QubitState &object) const final {
        double p = interaction_probability(probe, object);
        if (1.0 - p <= kDegenerate) {
            return certain_scatter();
        }
        return CouplingOutcome{p, survivor(probe, object)};
    }

  protected:
    virtual JointDensity survivor(const QubitState &probe, const QubitState &object) const = 0;
};

class ProbeRigidLaw final : public UniversalLaw {
    JointDensity survivor(const QubitState &probe, const QubitState &) const override {
        // aligned_state is the identity, so its inverse is too.
        QubitState anti = probe.orthogonal();
        return JointDensity::pure(tensor_product(probe, anti));
    }
};

class ObjectRigidLaw final : public UniversalLaw {
    JointDensity survivor(const QubitState &, const QubitState &object) const override {
        QubitState anti = aligned_state(object).orthogonal();
        return JointDensity::pure(tensor_product(anti, object));
    }
};

class SingletLaw final : public UniversalLaw {
    JointDensity survivor(const QubitState &, const QubitState &) const override {
        return JointDensity::singlet();
    }
};

class RandomMixLaw final : public UniversalLaw {
    JointDensity survivor(const QubitState &, const QubitState &) const override {
        return JointDensity::maximally_mixed();
    }
};

// Dephases onto the anti-aligned cells |b1 b2>, |b2 b1> of a fixed basis,
// weighted by the input's Born weights there.
class PreferredBasisLaw final : public UniversalLaw {
  public:
    explicit PreferredBasisLaw(Basis b)
        : b12_(JointDensity::pure(tensor_product(b.b1(), b.b2()))),
          b21_(JointDensity::pure(tensor_product(b.b2(), b.b1()))),
          basis_(std::move(b)) {}

  private:
    JointDensity survivor(const QubitState &probe, const QubitState &object) const override {
        double w12 = overlap_probability(probe, basis_.b1()) * overlap_probability(object, basis_.b2());
        double w21 = overlap_probability(probe, basis_.b2()) * overlap_probability(object, basis_.b1());
        double total = w12 + w21;
        double w = total > kDegenerate ? w12 / total : 0.5;
        return JointDensity::mix(std::clamp(w, 0.0, 1.0), b12_, b21_);
    }

    JointDensity b12_;
    JointDensity b21_;
    Basis basis_;
};

// Linear survive operator K applied to the product input:
// p_scatter = 1 - |K in|^2, survivor = K in / |K in|.
class OperatorLaw final : public CouplingLaw {
  public:
    explicit OperatorLaw(Mat4 k) : k_(std::move(k)) {}

    CouplingOutcome couple(const QubitState &probe, const QubitState &object) const override {
        Vec4 out = k_ * tensor_product(probe, object).amplitudes();
        double survive = out.squaredNorm();
        if (survive <= kDegenerate) {
            return certain_scatter();
        }
        return CouplingOutcome{std::clamp(1.0 - survive, 0.0, 1.0),
                               JointDensity::pure(JointPureState::from_vector(out))};
    }

  private:
    Mat4 k_;
};

Mat4 aligned_projector(const Basis &b) {
    Mat4 p = Mat4::Zero();
    for (int k = 0; k < 2; k++) {
        Vec4 v = tensor_product(b[k], b[k]).amplitudes();
        p += v * v.adjoint();
    }
    return p;
}

}  // namespace

NoiseParam::NoiseParam(double q) : q_(q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ConfigError("noise q = " + std::to_string(q) + " outside [0,1]");
    }
}

RuleSpec RuleSpec::probe_rigid() {
    return RuleSpec(RuleKind::probe_rigid, "probe-rigid", std::make_shared<ProbeRigidLaw>());
}

RuleSpec RuleSpec::object_rigid() {
    return RuleSpec(RuleKind::object_rigid, "object-rigid", std::make_shared<ObjectRigidLaw>());
}

RuleSpec RuleSpec::singlet() { return RuleSpec(RuleKind::singlet, "singlet", std::make_shared<SingletLaw>()); }

RuleSpec RuleSpec::random_mix() {
    return RuleSpec(RuleKind::random_mix, "random-mix", std::make_shared<RandomMixLaw>());
}

RuleSpec RuleSpec::preferred_basis(const Basis &b) {
    RuleSpec r(RuleKind::preferred_basis, "preferred-basis:" + b.name(), std::make_shared<PreferredBasisLaw>(b));
    r.basis_ = b;
    return r;
}

RuleSpec RuleSpec::coherent_projection(const Basis &b) {
    RuleSpec r(RuleKind::coherent_projection, "coherent-projection:" + b.name(),
               std::make_shared<OperatorLaw>(Mat4::Identity() - aligned_projector(b)));
    r.basis_ = b;
    return r;
}

bool RuleSpec::universal_scatter_law() const {
    return kind_ != RuleKind::coherent_projection && kind_ != RuleKind::custom;
}

std::vector<RuleSpec> builtin_rules() {
    return {RuleSpec::probe_rigid(),
            RuleSpec::object_rigid(),
            RuleSpec::singlet(),
            RuleSpec::random_mix(),
            RuleSpec::preferred_basis(Basis::sigma()),
            RuleSpec::coherent_projection(Basis::xy())};
}

RuleSpec validate_custom_rule(const Mat4 &k, std::string name) {
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            if (!std::isfinite(k(r, c).real()) || !std::isfinite(k(r, c).imag())) {
                throw InvalidRule("survive_operator[" + std::to_string(r) + "][" + std::to_string(c) +
                                  "] is not finite");
            }
        }
    }
    Mat4 slack = Mat4::Identity() - k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (slack + slack.adjoint()), Eigen::EigenvaluesOnly);
    double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -kStateTol) {
        throw ContractionViolation(
            "ContractionViolation: I - K^dagger K has most negative eigenvalue " + std::to_string(min_ev) +
                "; the survive operator would give survive probability above 1",
            min_ev);
    }
    RuleSpec r(RuleKind::custom, std::move(name), std::make_shared<OperatorLaw>(k));
    r.survive_op_ = k;
    return r;
}

QubitState aligned_state(const QubitState &object) { return object; }

double interaction_probability(const QubitState &probe, const QubitState &object) {
    return overlap_probability(probe, aligned_state(object));
}

CouplingOutcome apply_rule(const RuleSpec &rule, const QubitState &probe, const QubitState &object,
                           NoiseParam noise) {
    CouplingOutcome bare = rule.law().couple(probe, object);
    double q = noise.q();
    if (q == 0.0) {
        return bare;
    }
    double bare_survive = bare.survivor ? bare.p_survive() : 0.0;
    double survive = q + (1.0 - q) * bare_survive;
    if (survive <= kDegenerate) {
        return certain_scatter();
    }
    JointDensity input = JointDensity::pure(tensor_product(probe, object));
    double w = std::clamp(q / survive, 0.0, 1.0);
    CouplingOutcome out;
    out.p_scatter = bare.survivor ? (1.0 - q) * bare.p_scatter : 1.0 - q;
    out.survivor = bare.survivor ? JointDensity::mix(w, input, *bare.survivor) : input;
    return out;
}

CouplingOutcome swapped_channel(const RuleSpec &rule, const QubitState &probe, const QubitState &object,
                                NoiseParam noise) {
    CouplingOutcome out = apply_rule(rule, object, probe, noise);
    if (out.survivor) {
        out.survivor = out.survivor->swapped();
    }
    return out;
}

}  // namespace ifm
