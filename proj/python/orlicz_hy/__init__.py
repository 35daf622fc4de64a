"""Hausdorff-Young inequalities in Orlicz spaces on compact homogeneous spaces."""

import json

from . import _core
from ._core import (
    ComplementaryPair,
    HypothesisFailed,
    OrliczError,
    YoungFunction,
    conjugate,
    gauge,
    growth_fit,
    normalize_pair,
    pair,
    reps,
    run_cli,
    space_specs,
    young,
    young_inverse,
    young_specs,
)

__all__ = [
    "ComplementaryPair",
    "HypothesisFailed",
    "OrliczError",
    "YoungFunction",
    "conjugate",
    "dual_lp",
    "dual_orlicz",
    "gauge",
    "growth_fit",
    "hy_ratio",
    "normalize_pair",
    "pair",
    "random_coefficients",
    "ratio_search",
    "reps",
    "run_cli",
    "space_specs",
    "verify",
    "young",
    "young_inverse",
    "young_specs",
]


def random_coefficients(space, L, seed=0, profile="flat"):
    """Random band-limited coefficients as a dict (the coefficient JSON schema)."""
    return json.loads(_core.random_coefficients_json(space, L, seed, profile))


def _coeff_text(coefficients):
    return coefficients if isinstance(coefficients, str) else json.dumps(coefficients)


def dual_lp(coefficients, p):
    return _core.dual_lp_json(_coeff_text(coefficients), float(p))


def dual_orlicz(phi, coefficients):
    return _core.dual_orlicz_json(phi, _coeff_text(coefficients))


def hy_ratio(pair_spec, coefficients, oversample=4):
    return _core.hy_ratio_json(pair_spec, _coeff_text(coefficients), oversample)


def verify(inequality, **kwargs):
    """Runs one inequality check and returns the report as a dict."""
    return json.loads(_core.verify_json(inequality, **kwargs))


def ratio_search(space, pair, support, **kwargs):
    return json.loads(_core.ratio_search_json(space, pair, support, **kwargs))
