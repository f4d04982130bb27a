"""Lagrangian solver for scalar conservation laws through a Temple system."""

import json

from ._core import (
    PropertyViolation,
    RunResult,
    SchemeError,
    Transform,
    ValidationError,
    lambda2,
    make_transform,
    middle_state,
    solve_riemann,
)
from ._core import run as _run

__all__ = [
    "PropertyViolation",
    "RunResult",
    "SchemeError",
    "Transform",
    "ValidationError",
    "lambda2",
    "make_transform",
    "middle_state",
    "run",
    "report",
    "solve_riemann",
]


def run(config, stage="compare"):
    """Run the pipeline up to `stage` for a config dict (same keys as the CLI's JSON)."""
    return _run(json.dumps(config), stage)


def report(result):
    """report.json of a run as a dict."""
    return json.loads(result.report_json())
