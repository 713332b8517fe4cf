"""Python face of the singular quasilinear system solver.

Numeric primitives come straight from the compiled core; the report-producing
entry points return parsed dictionaries.
"""

import json

from ._core import (
    ExponentConfig,
    config_hash,
    moser_c4,
    phi_p,
    phi_p_inv,
    simon_constant,
    solve_radial,
    talenti_constant,
)
from . import _core

__all__ = [
    "ExponentConfig",
    "bounds",
    "config_hash",
    "moser_c4",
    "phi_p",
    "phi_p_inv",
    "simon_constant",
    "solve",
    "solve_radial",
    "talenti_constant",
    "validate",
]


def validate(cfg: ExponentConfig) -> dict:
    """Structural admissibility report for an exponent configuration."""
    return json.loads(_core.validate_json(cfg))


def bounds(config_text: str) -> dict:
    """A priori bound ledger for a full run configuration (config file text)."""
    return json.loads(_core.bounds_json(config_text))


def solve(config_text: str) -> dict:
    """Continuation solve plus certification for a full run configuration."""
    return json.loads(_core.solve_json(config_text))
