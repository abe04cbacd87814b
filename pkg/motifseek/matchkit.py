"""Left/right matching predicates between two windows.

A pair is *weak left matched* when every prefix of length i, v <= i <= w,
has relative Hamming distance at most beta.  *Left matched* additionally
requires the first v-1 characters to agree exactly.  Right variants are the
same tests on the reversed strings; FULL is LEFT and RIGHT together.
"""

from enum import Enum

import numpy as np

from motifseek.errors import InvalidArgumentError
from motifseek.params import DerivedParams

# Float slack on the beta comparison.
_TOL = 1e-12


class MatchKind(str, Enum):
    WEAK_LEFT = "weak_left"
    LEFT = "left"
    WEAK_RIGHT = "weak_right"
    RIGHT = "right"
    FULL = "full"


def prefix_match_rows(
    pattern: np.ndarray, rows: np.ndarray, v: int, beta: float, w: int, exact: bool
) -> np.ndarray:
    """Left predicate of one pattern against every row, one cumulative pass."""
    rows = np.atleast_2d(rows)
    mism = np.cumsum(rows[:, :w] != pattern[None, :w], axis=1)
    ok = np.ones(len(rows), dtype=bool)
    if exact:
        head = min(v - 1, w)
        if head > 0:
            ok &= mism[:, head - 1] == 0
    if v <= w:
        lengths = np.arange(v, w + 1)
        ok &= np.all(mism[:, v - 1 : w] <= beta * lengths + _TOL, axis=1)
    return ok


def prefix_match(
    x1: np.ndarray, x2: np.ndarray, v: int, beta: float, w: int, exact: bool
) -> bool:
    return bool(prefix_match_rows(x1, x2[None, :], v, beta, w, exact)[0])


def suffix_match_rows(
    pattern: np.ndarray, rows: np.ndarray, v: int, beta: float, w: int, exact: bool
) -> np.ndarray:
    """Right predicate: the left predicate on reversed windows."""
    rows = np.atleast_2d(rows)
    return prefix_match_rows(pattern[::-1], rows[:, ::-1], v, beta, w, exact)


def match_predicate(
    kind: MatchKind,
    x1,
    x2,
    params: DerivedParams,
    w: int | None = None,
    beta: float | None = None,
) -> bool:
    w = params.window if w is None else w
    beta = params.beta if beta is None else beta
    a, b = np.asarray(x1), np.asarray(x2)
    if len(a) < w or len(b) < w:
        raise InvalidArgumentError(
            f"match needs strings of at least {w} symbols, got {len(a)} and {len(b)}"
        )
    kind = MatchKind(kind)
    v = params.v

    if kind is MatchKind.FULL:
        return match_predicate(MatchKind.LEFT, a, b, params, w, beta) and match_predicate(
            MatchKind.RIGHT, a, b, params, w, beta
        )
    if kind in (MatchKind.WEAK_RIGHT, MatchKind.RIGHT):
        a, b = a[::-1], b[::-1]
    exact = kind in (MatchKind.LEFT, MatchKind.RIGHT)
    return prefix_match(a, b, v, beta, w, exact)
