"""Discrete abelian Yang-Mills checks on simplicial meshes."""

import json

from ._core import (
    NumericalError,
    ParseError,
    PreconditionError,
    TopologyError,
    YmdecError,
    betti,
    exit_config,
    exit_failed,
    exit_ok,
    relative_betti,
    report_schema,
    run_cli,
    tolerances,
)
from ._core import run as _run

__all__ = [
    "NumericalError",
    "ParseError",
    "PreconditionError",
    "TopologyError",
    "YmdecError",
    "betti",
    "exit_config",
    "exit_failed",
    "exit_ok",
    "relative_betti",
    "report",
    "report_schema",
    "run_cli",
    "tolerances",
]


def report(command, mesh, *, labels="", seed=0, tol=None, trials=0, degree=1):
    """Run one experiment and return the JSON report as a dict."""
    passed, text = _run(command, mesh, labels, seed, dict(tol or {}), "json", trials, degree)
    data = json.loads(text)
    assert data["passed"] == passed
    return data
