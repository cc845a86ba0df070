"""Python interface to the loewner C++ library.

Certificates, pipeline runs and measure representations cross the boundary
as JSON and are returned as plain dictionaries.
"""

import json

from ._loewner import (
    Function,
    Interval,
    LoewnerError,
    choose_shift,
    compose as _compose,
    diff_quotient,
    mul_linear,
    neg_reciprocal,
    neg_reciprocal_of_negative,
    rational_degree,
    recover_atom_weight,
    run_cli,
)
from . import _loewner

__all__ = [
    "Function",
    "Interval",
    "LoewnerError",
    "check",
    "choose_shift",
    "classify",
    "compose",
    "diff_quotient",
    "measure_function",
    "mul_linear",
    "neg_reciprocal",
    "neg_reciprocal_of_negative",
    "om_to_soc",
    "pipeline",
    "rational_degree",
    "recover_atom_weight",
    "replay",
    "run_cli",
    "soc_to_om",
    "substitute_square",
]


def _cfg(config):
    return "" if config is None else json.dumps(config)


def check(prop, f, on=None, config=None):
    """Run one certifier: prop is OM, OC, SOC, HalfPlane or LoewnerOrderN."""
    return json.loads(_loewner._check(prop, f, on, _cfg(config)))


def classify(f, on=None, config=None):
    return json.loads(_loewner._classify(f, on, _cfg(config)))


def replay(f, witness):
    """Recompute the gap recorded in a witness dictionary."""
    return _loewner._replay(f, json.dumps(witness))


def compose(phi, f, mode="strong", config=None):
    return _compose(phi, f, mode, _cfg(config))


def pipeline(process, f0, points, steps, shifts=None, certify=True, config=None):
    """Run main, star or backward. Returns (run dict, list of stage Functions)."""
    text, stages = _loewner._pipeline(process, f0, list(points), steps, list(shifts or []), certify, _cfg(config))
    return json.loads(text), stages


def measure_function(rep):
    return _loewner._measure_function(json.dumps(rep))


def om_to_soc(rep, x0):
    return json.loads(_loewner._om_to_soc(json.dumps(rep), x0))


def soc_to_om(rep, x1):
    return json.loads(_loewner._soc_to_om(json.dumps(rep), x1))


def substitute_square(rep):
    return json.loads(_loewner._substitute_square(json.dumps(rep)))
