"""Python bindings for delkit.

Models and event models are passed as JSON-compatible dicts (or JSON text)
in the same format the command-line tool reads.
"""

import json as _json

from . import _core
from ._core import BudgetExceeded, Error, ModelError, ParseError

__all__ = [
    "BudgetExceeded",
    "Error",
    "ModelError",
    "ParseError",
    "is_satisfiable",
    "is_valid",
    "model_check",
    "normalize",
    "product_worlds_built",
    "qbf_brute",
    "qbf_model_check",
    "size",
    "tiling_brute",
    "translate",
]


def _text(value):
    return value if isinstance(value, str) else _json.dumps(value)


def _events(events):
    if events is None:
        return "[]"
    return _text(events)


def normalize(formula, events=None):
    return _core.normalize(formula, _events(events))


def size(formula, events=None):
    return _core.size(formula, _events(events))


def model_check(model, formula, events=None, point=None, engine="pspace"):
    return _core.model_check(_text(model), formula, _events(events), point, engine)


def is_satisfiable(formula, events=None, steps=1_000_000, seconds=60.0):
    """Returns ("sat" | "unsat" | "unknown", model dict or None)."""
    verdict, model = _core.is_satisfiable(formula, _events(events), steps, seconds)
    return verdict, (_json.loads(model) if model is not None else None)


def is_valid(formula, events=None, steps=1_000_000, seconds=60.0):
    """True, False, or None when the budget runs out."""
    return _core.is_valid(formula, _events(events), steps, seconds)


def translate(formula, events=None, simplify=False):
    return _core.translate(formula, _events(events), simplify)


def qbf_brute(text):
    return _core.qbf_brute(text)


def qbf_model_check(text):
    return _core.qbf_model_check(text)


def tiling_brute(instance, n=None):
    return _core.tiling_brute(_text(instance), n)


def product_worlds_built():
    return _core.product_worlds_built()
