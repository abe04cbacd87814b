"""Brute-force references used to check the pipeline on small instances.

brute_force_consensus solves consensus patterns (pick one window per
sequence and a string minimizing total Hamming distance) exactly when the
search space allows, otherwise by coordinate descent labelled HEURISTIC.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from motifseek.errors import InvalidInstanceError, OracleRefusalError
from motifseek.params import DerivedParams
from motifseek.sampling import window_matrix
from motifseek.streams import PHASE_ORACLE, RandomStreams

# Consensus strings enumerated outright up to this many.
CONSENSUS_SPACE_LIMIT = 1 << 18
# Joint offset vectors enumerated outright up to this many.
JOINT_SPACE_LIMIT = 10**7
PAIR_SPACE_LIMIT = 10**7
DEFAULT_RESTARTS = 50
_JOINT_CHUNK = 1 << 15
_TOL = 1e-12


class OracleLabel(str, Enum):
    EXACT = "EXACT"
    HEURISTIC = "HEURISTIC"


@dataclass
class OracleResult:
    consensus: np.ndarray
    offsets: list[int]  # 1-based window starts
    cost: int
    label: OracleLabel

    @property
    def exact(self) -> bool:
        return self.label is OracleLabel.EXACT


def _vote(windows: np.ndarray, t: int) -> tuple[np.ndarray, int]:
    """Column plurality (smallest symbol on ties) and its total mismatches."""
    counts = np.stack([(windows == s).sum(axis=0) for s in range(t)])
    consensus = counts.argmax(axis=0).astype(np.uint8)
    cost = int(windows.shape[0] * windows.shape[1] - counts.max(axis=0).sum())
    return consensus, cost


def _result(sequences, offsets, m, t, label) -> OracleResult:
    windows = np.vstack([s[o - 1 : o - 1 + m] for s, o in zip(sequences, offsets)])
    consensus, cost = _vote(windows, t)
    return OracleResult(consensus, [int(o) for o in offsets], cost, label)


# ── Exact: enumerate consensus strings ──────────────────────────────────


def _all_strings(length: int, t: int) -> np.ndarray:
    """Every string of a length over range(t), lexicographic row order."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    grid = np.indices((t,) * length).reshape(length, -1).T
    return grid.astype(np.uint8)


def _by_consensus(sequences, m, t) -> OracleResult:
    half = m // 2
    left, right = _all_strings(half, t), _all_strings(m - half, t)
    total = np.zeros((len(left), len(right)), dtype=np.int64)
    per_seq_best = []
    for seq in sequences:
        windows = window_matrix(seq, np.arange(1, len(seq) - m + 2), m)
        d_left = (left[:, None, :] != windows[None, :, :half]).sum(axis=2)
        d_right = (right[:, None, :] != windows[None, :, half:]).sum(axis=2)
        best = np.full(total.shape, np.iinfo(np.int64).max, dtype=np.int64)
        for j in range(windows.shape[0]):
            np.minimum(best, d_left[:, j][:, None] + d_right[:, j][None, :], out=best)
        total += best
        per_seq_best.append((windows, best))

    optimum = int(total.min())
    chosen: tuple[int, ...] | None = None
    for li, ri in zip(*np.nonzero(total == optimum)):
        s = np.concatenate([left[li], right[ri]])
        offsets = tuple(
            int(((windows != s[None, :]).sum(axis=1)).argmin()) + 1
            for windows, _ in per_seq_best
        )
        if chosen is None or offsets < chosen:
            chosen = offsets
    return _result(sequences, chosen, m, t, OracleLabel.EXACT)


# ── Exact: enumerate offset vectors ─────────────────────────────────────


def _by_offsets(sequences, m, t, space: int) -> OracleResult:
    widths = [len(s) - m + 1 for s in sequences]
    windows = [window_matrix(s, np.arange(1, w + 1), m) for s, w in zip(sequences, widths)]
    k = len(sequences)
    best_cost, best_index = None, None
    for lo in range(0, space, _JOINT_CHUNK):
        idx = np.arange(lo, min(space, lo + _JOINT_CHUNK))
        choice = np.unravel_index(idx, widths)
        stacked = np.stack([windows[i][choice[i]] for i in range(k)], axis=1)
        counts = np.stack([(stacked == s).sum(axis=1) for s in range(t)])
        cost = k * m - counts.max(axis=0).sum(axis=1)
        pos = int(cost.argmin())
        if best_cost is None or cost[pos] < best_cost:
            best_cost, best_index = int(cost[pos]), int(idx[pos])
    offsets = [int(c) + 1 for c in np.unravel_index(best_index, widths)]
    return _result(sequences, offsets, m, t, OracleLabel.EXACT)


# ── Heuristic: coordinate descent ───────────────────────────────────────


def _descend(windows, offsets, m, t) -> list[int]:
    k = len(windows)
    current = list(offsets)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            rest = [windows[j][current[j]] for j in range(k) if j != i]
            others = np.vstack(rest) if rest else np.zeros((0, m), dtype=np.uint8)
            counts = np.stack([(others == s).sum(axis=0) for s in range(t)])
            # cost of each candidate window for sequence i, others fixed
            onehot = windows[i][:, None, :] == np.arange(t)[None, :, None]
            merged = counts[None, :, :] + onehot
            cost = k * m - merged.max(axis=1).sum(axis=1)
            pick = int(cost.argmin())
            if cost[pick] < cost[current[i]]:
                current[i] = pick
                changed = True
    return current


def _by_descent(sequences, m, t, streams: RandomStreams, restarts: int) -> OracleResult:
    windows = [window_matrix(s, np.arange(1, len(s) - m + 2), m) for s in sequences]
    best: tuple[int, list[int]] | None = None
    for r in range(restarts):
        rng = streams.stream(PHASE_ORACLE, r)
        start = [int(rng.integers(0, len(w))) for w in windows]
        found = _descend(windows, start, m, t)
        stacked = np.vstack([windows[i][found[i]] for i in range(len(windows))])
        _, cost = _vote(stacked, t)
        key = (cost, found)
        if best is None or key < best:
            best = key
    offsets = [o + 1 for o in best[1]]
    return _result(sequences, offsets, m, t, OracleLabel.HEURISTIC)


def brute_force_consensus(
    sequences: list[np.ndarray],
    m: int,
    alphabet_size: int | None = None,
    streams: RandomStreams | int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> OracleResult:
    """Minimum total-Hamming consensus of length m over one window per sequence.

    Ties resolve to the lexicographically smallest offset vector.
    """
    sequences = [np.asarray(s, dtype=np.uint8) for s in sequences]
    if not sequences:
        raise InvalidInstanceError("oracle needs at least one sequence")
    if m < 1 or any(len(s) < m for s in sequences):
        raise InvalidInstanceError(f"motif length {m} exceeds a sequence length")
    t = alphabet_size or int(max(s.max() for s in sequences)) + 1
    t = max(t, 2)
    if isinstance(streams, int):
        streams = RandomStreams(streams)

    if t**m <= CONSENSUS_SPACE_LIMIT:
        return _by_consensus(sequences, m, t)
    space = math.prod(len(s) - m + 1 for s in sequences)
    if space <= JOINT_SPACE_LIMIT:
        return _by_offsets(sequences, m, t, space)
    return _by_descent(sequences, m, t, streams, restarts)


def exhaustive_boundary_oracle(
    s1: np.ndarray, s2: np.ndarray, omega: float, params: DerivedParams
) -> tuple[int | None, int | None, int | None, int | None]:
    """All-pairs reference for collision detection with full position sets."""
    w = params.window
    n1, n2 = len(s1) - w + 1, len(s2) - w + 1
    if n1 < 1 or n2 < 1:
        return None, None, None, None
    if len(s1) * len(s2) > PAIR_SPACE_LIMIT:
        raise OracleRefusalError(
            f"{len(s1)} x {len(s2)} window pairs exceed the oracle limit"
        )
    rows2 = window_matrix(s2, np.arange(1, n2 + 1), w)
    limit = omega * w + _TOL
    hit2 = np.zeros(n2, dtype=bool)
    first = last = None
    for a in range(1, n1 + 1):
        ok = (rows2 != s1[a - 1 : a - 1 + w][None, :]).sum(axis=1) <= limit
        if ok.any():
            first = a if first is None else first
            last = a
            hit2 |= ok
    hits = np.flatnonzero(hit2)
    if first is None:
        return None, None, None, None
    return first, last, int(hits[0]) + 1, int(hits[-1]) + 1
