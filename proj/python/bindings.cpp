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

#include <iostream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ifm/audit.hpp"
#include "ifm/cli.hpp"
#include "ifm/io.hpp"

namespace py = pybind11;

namespace {

// Reports cross the boundary as JSON text and are decoded on the Python side.
std::string audit_json(const std::string &rule, const std::string &mode, std::uint64_t trials, std::uint64_t seed,
                       std::optional<std::vector<double>> noise_levels) {
    ifm::AuditConfig cfg;
    cfg.mode = mode == "mc" ? ifm::EvalMode::monte_carlo : ifm::EvalMode::exact;
    cfg.trials = trials;
    cfg.seed = seed;
    if (noise_levels) {
        cfg.noise_levels = *noise_levels;
    }
    cfg.validate();
    return ifm::io::to_json(ifm::audit_rule(ifm::io::resolve_rule(rule), cfg)).dump();
}

std::string filter_json(const std::string &rule, int source_mode, const std::string &object_state,
                        const std::string &analyzer_basis, const std::string &roles, double q,
                        const std::string &mode, std::uint64_t trials, std::uint64_t seed) {
    ifm::FilterConfig cfg;
    cfg.rule = ifm::io::resolve_rule(rule);
    cfg.source_mode = source_mode;
    cfg.object_state = ifm::io::parse_state_spec(object_state);
    cfg.analyzer_basis = ifm::io::parse_basis_spec(analyzer_basis);
    cfg.roles = roles == "atom-probe" ? ifm::Roles::atom_probe : ifm::Roles::photon_probe;
    cfg.noise = ifm::NoiseParam(q);
    cfg.evaluation = mode == "mc" ? ifm::Evaluation::monte_carlo(trials, seed) : ifm::Evaluation::exact();
    cfg.validate();
    return ifm::io::to_json(ifm::run_filter(cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-qubit non-interaction rules: states, rules, experiments and audits";

    py::register_exception<ifm::Error>(m, "IfmError", PyExc_ValueError);

    py::class_<ifm::QubitState>(m, "QubitState")
        .def_static("x", &ifm::QubitState::x)
        .def_static("y", &ifm::QubitState::y)
        .def_static("sigma_plus", &ifm::QubitState::sigma_plus)
        .def_static("sigma_minus", &ifm::QubitState::sigma_minus)
        .def_static("diag_plus", &ifm::QubitState::diag_plus)
        .def_static("diag_minus", &ifm::QubitState::diag_minus)
        .def_static("parse", [](const std::string &s) { return ifm::io::parse_state_spec(s); })
        .def_static("from_amplitudes", &ifm::QubitState::from_amplitudes)
        .def("amplitudes", [](const ifm::QubitState &s) { return ifm::Vec2(s.amplitudes()); })
        .def("orthogonal", &ifm::QubitState::orthogonal)
        .def("bloch", [](const ifm::QubitState &s) {
            auto b = ifm::to_bloch(s);
            return std::array<double, 3>{b.n1, b.n2, b.n3};
        })
        .def("__repr__", [](const ifm::QubitState &s) { return "QubitState(" + ifm::io::state_spec(s) + ")"; });

    py::class_<ifm::Basis>(m, "Basis")
        .def_static("xy", &ifm::Basis::xy)
        .def_static("sigma", &ifm::Basis::sigma)
        .def_static("diag", &ifm::Basis::diag)
        .def_static("parse", [](const std::string &s) { return ifm::io::parse_basis_spec(s); })
        .def_property_readonly("b1", &ifm::Basis::b1)
        .def_property_readonly("b2", &ifm::Basis::b2)
        .def_property_readonly("name", &ifm::Basis::name);

    py::class_<ifm::RuleSpec>(m, "RuleSpec")
        .def_static("probe_rigid", &ifm::RuleSpec::probe_rigid)
        .def_static("object_rigid", &ifm::RuleSpec::object_rigid)
        .def_static("singlet", &ifm::RuleSpec::singlet)
        .def_static("random_mix", &ifm::RuleSpec::random_mix)
        .def_static("preferred_basis", &ifm::RuleSpec::preferred_basis)
        .def_static("coherent_projection", &ifm::RuleSpec::coherent_projection)
        .def_static("resolve", &ifm::io::resolve_rule, py::arg("name_or_path"))
        .def_static("custom", &ifm::validate_custom_rule, py::arg("survive_operator"), py::arg("name") = "custom")
        .def_property_readonly("name", &ifm::RuleSpec::name);

    m.def("builtin_rules", &ifm::builtin_rules);
    m.def("interaction_probability", &ifm::interaction_probability, py::arg("probe"), py::arg("object"));
    m.def("aligned_state", &ifm::aligned_state);
    m.def(
        "apply_rule",
        [](const ifm::RuleSpec &rule, const ifm::QubitState &probe, const ifm::QubitState &object, double q) {
            auto out = ifm::apply_rule(rule, probe, object, ifm::NoiseParam(q));
            std::optional<ifm::Mat4> survivor;
            if (out.survivor) {
                survivor = out.survivor->matrix();
            }
            return py::make_tuple(out.p_scatter, survivor);
        },
        py::arg("rule"), py::arg("probe"), py::arg("object"), py::arg("q") = 0.0,
        "Returns (p_scatter, survivor density matrix or None).");
    m.def("entanglement_entropy", [](const ifm::Vec4 &v) {
        return ifm::entanglement_entropy(ifm::JointPureState::from_vector(v));
    });
    m.def("singlet_vector", [] { return ifm::Vec4(ifm::JointPureState::singlet().amplitudes()); });

    m.def("_audit_json", &audit_json, py::arg("rule"), py::arg("mode") = "exact", py::arg("trials") = 100000,
          py::arg("seed") = 42, py::arg("noise_levels") = std::nullopt);
    m.def("_filter_json", &filter_json, py::arg("rule"), py::arg("source_mode") = 1, py::arg("object_state") = "x",
          py::arg("analyzer_basis") = "xy", py::arg("roles") = "photon-probe", py::arg("q") = 0.0,
          py::arg("mode") = "exact", py::arg("trials") = 100000, py::arg("seed") = 42);
    m.def(
        "_correlation_json",
        [](const ifm::QubitState &probe, const ifm::QubitState &object, const ifm::Basis &basis,
           const ifm::RuleSpec &rule, double q) {
            return ifm::io::to_json(ifm::run_correlation(probe, object, basis, rule, ifm::NoiseParam(q))).dump();
        },
        py::arg("probe"), py::arg("object"), py::arg("basis"), py::arg("rule"), py::arg("q") = 0.0);
    m.def(
        "_flip_json",
        [](const ifm::QubitState &probe, const ifm::QubitState &object, const ifm::RuleSpec &rule, double q) {
            return ifm::io::to_json(ifm::run_flip(probe, object, rule, ifm::NoiseParam(q))).dump();
        },
        py::arg("probe"), py::arg("object"), py::arg("rule"), py::arg("q") = 0.0);
    m.def(
        "main", [](const std::vector<std::string> &args) { return ifm::run_cli(args, std::cout, std::cerr); },
        "Runs the command line with the given arguments and returns the exit code.");
}
