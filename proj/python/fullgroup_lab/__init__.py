"""Python access to the fglab core.

Exact rationals come back as "p/q" strings; use :func:`as_fraction` to turn
them into :class:`fractions.Fraction`.
"""

import json
from fractions import Fraction

from ._core import (
    FglabError,
    __version__,
    apply_word,
    builtin_actions,
    canonical_point,
    cocycle,
    escape_probabilities,
    level_graph,
    line_chart,
)
from . import _core


def as_fraction(text):
    return Fraction(text)


def ball(action, radius, basepoint=""):
    return json.loads(_core.ball(action, radius, basepoint))


def level(action, n):
    return json.loads(level_graph(action, n))


def verify(action, radius=200, n=10, F=None, basepoint=""):
    """Full lemma report as a dict. F is a list of element dicts or None."""
    f_json = "" if F is None else json.dumps(F)
    return json.loads(_core.verify(action, radius, n, f_json, basepoint))


__all__ = [
    "FglabError",
    "__version__",
    "apply_word",
    "as_fraction",
    "ball",
    "builtin_actions",
    "canonical_point",
    "cocycle",
    "escape_probabilities",
    "level",
    "line_chart",
    "verify",
]
