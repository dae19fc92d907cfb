"""Digraph coloring laboratory: random digraph model, exact dichromatic-number
and acyclic-set solvers, analytic bounds, certified constructions and a
seeded experiment harness.

Functions returning structured reports decode the native JSON into plain
dicts, so results can be passed straight to ``json.dump``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ._core import (
    Digraph,
    InputError,
    JsonError,
    chromatic_number,
    digirth,
    girth,
    is_acyclic,
    is_acyclic_induced,
    max_acyclic_set,
    min_fvs,
    p_theorem1,
    p_theorem2,
    sample,
    two_colorable_fast,
)
from . import _core

__all__ = [
    "Digraph",
    "InputError",
    "JsonError",
    "chromatic_number",
    "decompose",
    "digirth",
    "evaluate_bound",
    "girth",
    "is_acyclic",
    "is_acyclic_induced",
    "max_acyclic_set",
    "min_fvs",
    "p_theorem1",
    "p_theorem2",
    "run_experiment",
    "sample",
    "short_cycle_witness",
    "theorem1_pipeline",
    "theorem2_audit",
    "two_colorable_fast",
    "validate_certificate",
    "verify_report",
]


def evaluate_bound(name: str, **params: float) -> dict[str, Any]:
    """Evaluate an analytic bound by name, e.g. ``evaluate_bound("mas_bound", n=1000, p=0.1)``."""
    return json.loads(_core.evaluate_bound_json(name, {k: float(v) for k, v in params.items()}))


def theorem1_pipeline(delta: int, g: int, n: int, seed: int, exact_alpha_threshold: int = 40) -> dict[str, Any]:
    """Sample, prune to max degree ``delta`` and girth ``g``, and return the certificate."""
    return json.loads(_core.theorem1_pipeline_json(delta, g, n, seed, exact_alpha_threshold))


def validate_certificate(certificate: dict[str, Any]) -> tuple[bool, list[str]]:
    """Re-derive every field of a certificate; returns ``(ok, problems)``."""
    return _core.validate_certificate_json(json.dumps(certificate))


def theorem2_audit(d: Digraph, k: int, eps: float, subset_budget: int = 10_000, seed: int = 0) -> dict[str, Any]:
    """Search for subsets of at most ``eps * n`` vertices that need three colors."""
    return json.loads(_core.theorem2_audit_json(d, k, eps, subset_budget, seed))


def decompose(d: Digraph, t: int) -> dict[str, Any]:
    """Either ``t`` vertex-disjoint dicycles or a feedback vertex set."""
    return json.loads(_core.decompose_json(d, t))


def short_cycle_witness(d: Digraph) -> dict[str, Any]:
    """A short dicycle of a digraph with dichromatic number at least 3."""
    return json.loads(_core.short_cycle_witness_json(d))


def run_experiment(config: dict[str, Any]) -> dict[str, Any]:
    """Run an experiment config (same schema as the CLI) and return its summary."""
    return json.loads(_core.run_experiment_json(json.dumps(config)))


def verify_report(report_dir: str | Path) -> tuple[bool, str, int | None]:
    """Check a report directory; returns ``(passed, detail, differing_trial)``."""
    return _core.verify_report(Path(report_dir))
