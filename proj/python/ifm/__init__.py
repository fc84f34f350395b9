# Copyright 2026 The ifm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the ifm rule engine, experiments and audits."""

import json

from ._core import (
    Basis,
    IfmError,
    QubitState,
    RuleSpec,
    aligned_state,
    apply_rule,
    builtin_rules,
    entanglement_entropy,
    interaction_probability,
    main,
    singlet_vector,
)
from . import _core

__all__ = [
    "Basis",
    "IfmError",
    "QubitState",
    "RuleSpec",
    "aligned_state",
    "apply_rule",
    "audit",
    "builtin_rules",
    "correlate",
    "entanglement_entropy",
    "flip",
    "interaction_probability",
    "main",
    "run_filter",
    "singlet_vector",
]


def audit(rule, mode="exact", trials=100000, seed=42, noise_levels=None):
    """Audit report for a rule name or custom-rule path, as a dict."""
    return json.loads(_core._audit_json(rule, mode, trials, seed, noise_levels))


def run_filter(rule, source_mode=1, object_state="x", analyzer_basis="xy",
               roles="photon-probe", q=0.0, mode="exact", trials=100000, seed=42):
    """Detector distribution for one filter configuration, as a dict."""
    return json.loads(_core._filter_json(rule, source_mode, object_state, analyzer_basis,
                                         roles, q, mode, trials, seed))


def correlate(probe, obj, basis, rule, q=0.0):
    return json.loads(_core._correlation_json(probe, obj, basis, rule, q))


def flip(probe, obj, rule, q=0.0):
    return json.loads(_core._flip_json(probe, obj, rule, q))
