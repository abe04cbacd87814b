"""Point selection, collision detection and boundary refinement.

Positions are 1-based window starts throughout; a window at u covers
S[u .. u+w-1].  Every function takes an optional WorkCounters that it
advances in place.
"""

import math

import numpy as np

from motifseek.errors import InvalidArgumentError
from motifseek.params import AlgorithmType, DerivedParams, omega_for
from motifseek.results import RoughBoundaries, WorkCounters

# Rabin-Karp modulus and base for exact-window fingerprints.
FINGERPRINT_MOD = 2_147_483_647
FINGERPRINT_BASE = 257
# Upper bound on elements materialized per block of the all-pairs scan.
PAIR_BLOCK_ELEMENTS = 1 << 22
_TOL = 1e-12

Collision = tuple[int | None, int | None, int | None, int | None]


def valid_starts(seq_len: int, w: int) -> tuple[int, int]:
    """Interval of window starts that fit inside a sequence."""
    return 1, seq_len - w + 1


def clip_interval(lo: int, hi: int, bounds: tuple[int, int]) -> tuple[int, int]:
    return max(lo, bounds[0]), min(hi, bounds[1])


def window_matrix(seq: np.ndarray, starts: np.ndarray, w: int) -> np.ndarray:
    """Rows are the windows starting at each (1-based) position."""
    starts = np.asarray(starts, dtype=np.int64)
    return seq[(starts - 1)[:, None] + np.arange(w)]


# ── Point selection ─────────────────────────────────────────────────────


def point_selection(
    seq: np.ndarray,
    L: float,
    intervals: list[tuple[int, int]],
    algo: AlgorithmType,
    params: DerivedParams,
    rng: np.random.Generator | None = None,
    counters: WorkCounters | None = None,
) -> np.ndarray:
    """Sorted, de-duplicated positions drawn from the union of intervals."""
    if L < 1:
        raise InvalidArgumentError(f"block size L={L} must be at least 1")
    algo = AlgorithmType.parse(algo)
    spans = []
    for lo, hi in intervals:
        if lo > hi:
            continue
        if lo < 1 or hi > len(seq):
            raise InvalidArgumentError(
                f"interval [{lo}, {hi}] outside sequence of length {len(seq)}"
            )
        spans.append((lo, hi))

    exhaustive = (
        algo is AlgorithmType.DETERMINISTIC_SUPERQUADRATIC
        or L < params.sampling_threshold
    )
    picked: list[np.ndarray] = []
    if exhaustive:
        picked = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in spans]
    else:
        if rng is None:
            raise InvalidArgumentError("randomized point selection needs a generator")
        block = math.ceil(L)
        per_block = math.ceil(params.M(L))
        for lo, hi in spans:
            for start in range(lo, hi + 1, block):
                size = min(block, hi - start + 1)
                if size <= per_block:
                    picked.append(np.arange(start, start + size, dtype=np.int64))
                else:
                    offsets = rng.choice(size, size=per_block, replace=False)
                    picked.append(start + offsets.astype(np.int64))

    result = np.unique(np.concatenate(picked)) if picked else np.zeros(0, dtype=np.int64)
    if counters is not None:
        counters.positions_sampled += len(result)
    return result


# ── Collision detection ─────────────────────────────────────────────────


def fingerprints(seq: np.ndarray, starts: np.ndarray, w: int) -> np.ndarray:
    """Rabin-Karp hash of each window, computed column by column."""
    windows = window_matrix(seq, starts, w).astype(np.int64)
    acc = np.zeros(len(starts), dtype=np.int64)
    for k in range(w):
        acc = (acc * FINGERPRINT_BASE + windows[:, k]) % FINGERPRINT_MOD
    return acc


def _check_starts(seq: np.ndarray, starts: np.ndarray, w: int, label: str) -> None:
    if len(starts) and (starts.min() < 1 or starts.max() + w - 1 > len(seq)):
        raise InvalidArgumentError(f"{label} holds a window start past the sequence end")


def _exact_collisions(s1, u1, s2, u2, w, counters) -> tuple[np.ndarray, np.ndarray]:
    h1 = fingerprints(s1, u1, w)
    h2 = fingerprints(s2, u2, w)
    shared = np.intersect1d(h1, h2)
    cand1 = np.flatnonzero(np.isin(h1, shared))
    cand2 = np.flatnonzero(np.isin(h2, shared))

    # Buckets keyed by fingerprint; content verification removes false hits.
    buckets: dict[int, set[bytes]] = {}
    rows2 = window_matrix(s2, u2[cand2], w)
    for idx, row in zip(cand2, rows2):
        buckets.setdefault(int(h2[idx]), set()).add(row.tobytes())
    rows1 = window_matrix(s1, u1[cand1], w)
    hit1 = np.zeros(len(u1), dtype=bool)
    keys1: dict[int, set[bytes]] = {}
    for idx, row in zip(cand1, rows1):
        content = row.tobytes()
        if content in buckets.get(int(h1[idx]), ()):
            hit1[idx] = True
            keys1.setdefault(int(h1[idx]), set()).add(content)
    hit2 = np.zeros(len(u2), dtype=bool)
    for idx, row in zip(cand2, rows2):
        if row.tobytes() in keys1.get(int(h2[idx]), ()):
            hit2[idx] = True

    if counters is not None:
        counters.window_comparisons += len(u1) + len(u2) + len(cand1) + len(cand2)
        counters.character_comparisons += w * (len(u1) + len(u2) + len(cand1) + len(cand2))
    return hit1, hit2


def qualifying_pairs(
    s1: np.ndarray,
    u1: np.ndarray,
    s2: np.ndarray,
    u2: np.ndarray,
    threshold: float,
    w: int,
    counters: WorkCounters | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Masks over u1 and u2 of windows in at least one pair within threshold."""
    hit1 = np.zeros(len(u1), dtype=bool)
    hit2 = np.zeros(len(u2), dtype=bool)
    if len(u1) == 0 or len(u2) == 0:
        return hit1, hit2
    limit = threshold * w + _TOL
    rows1 = window_matrix(s1, u1, w)
    rows2 = window_matrix(s2, u2, w)
    chunk = max(1, PAIR_BLOCK_ELEMENTS // (len(u2) * w))
    for lo in range(0, len(u1), chunk):
        block = rows1[lo : lo + chunk]
        mism = (block[:, None, :] != rows2[None, :, :]).sum(axis=2)
        ok = mism <= limit
        hit1[lo : lo + chunk] = ok.any(axis=1)
        hit2 |= ok.any(axis=0)
    if counters is not None:
        counters.window_comparisons += len(u1) * len(u2)
        counters.character_comparisons += len(u1) * len(u2) * w
    return hit1, hit2


def _extremes(positions: np.ndarray, mask: np.ndarray) -> tuple[int | None, int | None]:
    hits = positions[mask]
    if len(hits) == 0:
        return None, None
    return int(hits.min()), int(hits.max())


def collision_detection(
    s1: np.ndarray,
    u1,
    s2: np.ndarray,
    u2,
    omega: float,
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> Collision:
    """(least S1 anchor, greatest S1 anchor, least S2 anchor, greatest S2 anchor).

    An anchor counts when some window pair through it has relative Hamming
    distance at most omega.  Components are None when nothing qualifies.
    """
    w = params.window
    u1 = np.asarray(u1, dtype=np.int64)
    u2 = np.asarray(u2, dtype=np.int64)
    _check_starts(s1, u1, w, "U1")
    _check_starts(s2, u2, w, "U2")
    if len(u1) == 0 or len(u2) == 0:
        return None, None, None, None

    if omega == 0:
        hit1, hit2 = _exact_collisions(s1, u1, s2, u2, w, counters)
    else:
        hit1, hit2 = qualifying_pairs(s1, u1, s2, u2, omega, w, counters)
    a, a_max = _extremes(u1, hit1)
    e, e_max = _extremes(u2, hit2)
    return a, a_max, e, e_max


# ── Boundary refinement ─────────────────────────────────────────────────


def improve_boundaries(
    s1: np.ndarray,
    a_l: int,
    a_r: int,
    s2: np.ndarray,
    f_l: int,
    f_r: int,
    L: float,
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> Collision:
    """Re-scan +-L around each anchor at threshold beta.

    Returns (least S1 start near a_l, greatest S1 start near a_r,
    least S2 start near f_l, greatest S2 start near f_r).
    """
    if None in (a_l, a_r, f_l, f_r):
        raise InvalidArgumentError("improve_boundaries needs four known anchors")
    if L < 1:
        raise InvalidArgumentError(f"L={L} must be at least 1")
    w = params.window
    span = math.ceil(L)
    bounds1 = valid_starts(len(s1), w)
    bounds2 = valid_starts(len(s2), w)

    def scan(anchor1: int, anchor2: int):
        lo1, hi1 = clip_interval(anchor1 - span, anchor1 + span, bounds1)
        lo2, hi2 = clip_interval(anchor2 - span, anchor2 + span, bounds2)
        r1 = np.arange(lo1, hi1 + 1, dtype=np.int64)
        r2 = np.arange(lo2, hi2 + 1, dtype=np.int64)
        hit1, hit2 = qualifying_pairs(s1, r1, s2, r2, params.beta, w, counters)
        return _extremes(r1, hit1), _extremes(r2, hit2)

    (a1, _), (f2, _) = scan(a_l, f_l)
    (_, a1_max), (_, f2_max) = scan(a_r, f_r)
    return a1, a1_max, f2, f2_max


def to_rough(left: int | None, right_start: int | None, w: int) -> RoughBoundaries:
    """Boundaries from a left window start and a right window start."""
    if left is None or right_start is None:
        return RoughBoundaries()
    right = right_start + w - 1
    if left > right:
        return RoughBoundaries()
    return RoughBoundaries(left, right)


def initial_boundaries(
    s1: np.ndarray,
    s2: np.ndarray,
    algo: AlgorithmType,
    params: DerivedParams,
    rng: np.random.Generator | None = None,
    counters: WorkCounters | None = None,
) -> tuple[RoughBoundaries, RoughBoundaries] | None:
    """Halving search for a first collision between two sequences.

    Starts at L = ceil(n^(2/5)) and halves L until a collision appears or L
    drops below half the sampling threshold.  Returns None when no
    collision was ever found.
    """
    w = params.window
    if len(s1) < w or len(s2) < w:
        raise InvalidArgumentError(f"sequences must hold at least one window of {w}")
    algo = AlgorithmType.parse(algo)
    omega = omega_for(algo, params)
    stop = params.sampling_threshold / 2
    L: float = math.ceil(params.n ** 0.4)

    while True:
        u1 = point_selection(s1, L, [valid_starts(len(s1), w)], algo, params, rng, counters)
        u2 = point_selection(s2, L, [valid_starts(len(s2), w)], algo, params, rng, counters)
        a, a_max, e, e_max = collision_detection(s1, u1, s2, u2, omega, params, counters)
        if a is not None:
            a1, a1_max, f2, f2_max = improve_boundaries(
                s1, a, a_max, s2, e, e_max, 2 * L, params, counters
            )
            first = to_rough(a1, a1_max, w)
            second = to_rough(f2, f2_max, w)
            # Fall back to the raw collision anchors where refinement lost them.
            if not first.known:
                first = to_rough(a, a_max, w)
            if not second.known:
                second = to_rough(e, e_max, w)
            return first, second
        L = L / 2
        if L < stop or L < 1:
            return None
