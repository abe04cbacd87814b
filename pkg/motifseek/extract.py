"""Motif-length estimation, region matching, extraction and voting."""

import math
from dataclasses import dataclass

import numpy as np

from motifseek.errors import EstimationFailureError, InvalidArgumentError
from motifseek.matchkit import prefix_match_rows, suffix_match_rows
from motifseek.params import DerivedParams
from motifseek.results import RoughBoundaries, WorkCounters
from motifseek.sampling import window_matrix

Region = tuple[int, int]

# Plurality share an end column needs to stay in (or join) a refined consensus.
END_COLUMN_SHARE = 0.7


def motif_length_median(rough: list) -> int:
    """Lower median of right - left over the pairs with both ends known."""
    lengths = []
    for item in rough:
        if isinstance(item, RoughBoundaries):
            left, right = item.left, item.right
        else:
            left, right = item
        if left is None or right is None:
            continue
        lengths.append(right - left)
    if not lengths:
        raise EstimationFailureError("no rough boundary pair with both ends known")
    lengths.sort()
    return lengths[(len(lengths) - 1) // 2]


# ── Match ───────────────────────────────────────────────────────────────


def first_left_hit(
    g_l: np.ndarray,
    seq: np.ndarray,
    lo: int,
    hi: int,
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> int | None:
    """Least a in [lo, hi] with g_l LEFT matching S[a .. a+w-1]."""
    w = params.window
    lo, hi = max(lo, 1), min(hi, len(seq) - w + 1)
    if lo > hi:
        return None
    starts = np.arange(lo, hi + 1)
    ok = prefix_match_rows(g_l, window_matrix(seq, starts, w), params.v, params.beta, w, True)
    if counters is not None:
        counters.predicate_checks += len(starts)
    hits = np.flatnonzero(ok)
    return int(starts[hits[0]]) if len(hits) else None


def first_right_hit(
    g_r: np.ndarray,
    seq: np.ndarray,
    lo: int,
    hi: int,
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> int | None:
    """Greatest b in [lo, hi] with g_r RIGHT matching S[b-w+1 .. b]."""
    w = params.window
    lo, hi = max(lo, w), min(hi, len(seq))
    if lo > hi:
        return None
    ends = np.arange(hi, lo - 1, -1)
    ok = suffix_match_rows(g_r, window_matrix(seq, ends - w + 1, w), params.v, params.beta, w, True)
    if counters is not None:
        counters.predicate_checks += len(ends)
    hits = np.flatnonzero(ok)
    return int(ends[hits[0]]) if len(hits) else None


def match_region(
    g_l: np.ndarray,
    g_r: np.ndarray,
    seq: np.ndarray,
    rough: RoughBoundaries,
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> Region | None:
    """Region [a, b] of ``seq`` bracketed by g_l and g_r, or None (EMPTY)."""
    w = params.window
    if len(g_l) != w or len(g_r) != w:
        raise InvalidArgumentError(f"G_l and G_r must both have length {w}")
    if not rough.known:
        return None
    slack = params.v + params.u2
    a = first_left_hit(g_l, seq, rough.left, rough.left + slack, params, counters)
    if a is None:
        return None
    b = first_right_hit(g_r, seq, rough.right - slack, rough.right, params, counters)
    if b is None or a > b:
        return None
    return a, b


# ── Extract ─────────────────────────────────────────────────────────────


@dataclass
class ExtractOutcome:
    candidate: Region
    regions: list[Region | None]

    @property
    def empty_count(self) -> int:
        return sum(1 for r in self.regions if r is None)


def extract_threshold(k2: int, params: DerivedParams) -> int:
    """Largest tolerated number of EMPTY regions."""
    raw = math.floor((params.Q0 + params.R + 2 * params.epsilon) * k2)
    return min(raw, k2 // 2)


def extract_phase(
    anchor: np.ndarray,
    anchor_rough: RoughBoundaries,
    z2: list[np.ndarray],
    z2_rough: list[RoughBoundaries],
    params: DerivedParams,
    counters: WorkCounters | None = None,
) -> ExtractOutcome | None:
    """First candidate (G_l, G_r) of the anchor whose EMPTY count fits.

    Candidates run a ascending (outer) and b descending (inner).  A region
    whose length differs from the candidate's b - a + 1 counts as EMPTY so
    that every surviving region can be voted column by column.
    Returns None (NO_CANDIDATE) when no candidate qualifies.
    """
    if not anchor_rough.known:
        return None
    w = params.window
    k2 = len(z2)
    slack = params.v + params.u1
    limit = extract_threshold(k2, params)
    slack2 = params.v + params.u2

    a_lo = max(anchor_rough.left, 1)
    a_hi = min(anchor_rough.left + slack, len(anchor) - w + 1)
    b_hi = min(anchor_rough.right, len(anchor))
    b_lo = max(anchor_rough.right - slack, w)

    left_cache: dict[int, list[int | None]] = {}
    right_cache: dict[int, list[int | None]] = {}

    def left_hits(a: int) -> list[int | None]:
        if a not in left_cache:
            g_l = anchor[a - 1 : a - 1 + w]
            left_cache[a] = [
                first_left_hit(g_l, s, r.left, r.left + slack2, params, counters)
                if r.known
                else None
                for s, r in zip(z2, z2_rough)
            ]
        return left_cache[a]

    def right_hits(b: int) -> list[int | None]:
        if b not in right_cache:
            g_r = anchor[b - w : b]
            right_cache[b] = [
                first_right_hit(g_r, s, r.right - slack2, r.right, params, counters)
                if r.known
                else None
                for s, r in zip(z2, z2_rough)
            ]
        return right_cache[b]

    for a in range(a_lo, a_hi + 1):
        lefts = left_hits(a)
        if sum(1 for x in lefts if x is None) > limit:
            continue
        for b in range(b_hi, b_lo - 1, -1):
            if b < a:
                break
            width = b - a
            regions: list[Region | None] = []
            for la, rb in zip(lefts, right_hits(b)):
                if la is None or rb is None or la > rb or rb - la != width:
                    regions.append(None)
                else:
                    regions.append((la, rb))
            outcome = ExtractOutcome((a, b), regions)
            if outcome.empty_count <= limit:
                return outcome
    return None


# ── Voting ──────────────────────────────────────────────────────────────


def voting_phase(
    regions: list,
    alphabet_size: int | None = None,
    counters: WorkCounters | None = None,
) -> np.ndarray:
    """Column-wise plurality; ties go to the smallest symbol index."""
    kept = [np.asarray(r) for r in regions if r is not None]
    if not kept:
        raise InvalidArgumentError("voting needs at least one non-empty region")
    width = len(kept[0])
    if any(len(r) != width for r in kept):
        raise InvalidArgumentError("regions to vote on differ in length")
    stack = np.vstack(kept).astype(np.int64)
    t = int(stack.max()) + 1 if alphabet_size is None else alphabet_size
    counts = np.stack([(stack == s).sum(axis=0) for s in range(t)])
    if counters is not None:
        counters.votes_cast += stack.size
    return counts.argmax(axis=0).astype(np.uint8)


# ── Consensus refinement ────────────────────────────────────────────────


def best_windows(consensus: np.ndarray, sequences: list[np.ndarray]) -> tuple[list[int], int]:
    """Leftmost closest window per sequence (1-based) and the total distance."""
    m = len(consensus)
    offsets, total = [], 0
    for seq in sequences:
        if len(seq) < m:
            raise InvalidArgumentError("sequence shorter than the consensus")
        rows = window_matrix(seq, np.arange(1, len(seq) - m + 2), m)
        dist = (rows != consensus[None, :]).sum(axis=1)
        best = int(dist.argmin())
        offsets.append(best + 1)
        total += int(dist[best])
    return offsets, total


def consensus_cost(consensus: np.ndarray, sequences: list[np.ndarray]) -> int:
    return best_windows(np.asarray(consensus), sequences)[1]


def consensus_regions(
    consensus: np.ndarray, sequences: list[np.ndarray], beta: float
) -> list[Region | None]:
    """Closest window per sequence, or None when it is farther than beta."""
    m = len(consensus)
    offsets, _ = best_windows(np.asarray(consensus), sequences)
    regions: list[Region | None] = []
    for seq, o in zip(sequences, offsets):
        mism = int(np.count_nonzero(seq[o - 1 : o - 1 + m] != consensus))
        regions.append((o, o + m - 1) if mism <= beta * m + 1e-12 else None)
    return regions


def _column_vote(
    sequences: list[np.ndarray], offsets: list[int], pos: int, t: int
) -> tuple[int, float]:
    """Plurality symbol and its share at 0-based column ``pos`` of the alignment.

    Sequences whose window does not reach that column count against the share.
    """
    symbols = [
        int(seq[o - 1 + pos]) for seq, o in zip(sequences, offsets) if 0 <= o - 1 + pos < len(seq)
    ]
    if not symbols:
        return 0, 0.0
    counts = np.bincount(symbols, minlength=t)
    best = int(counts.argmax())
    return best, counts[best] / len(sequences)


def adjust_ends(
    consensus: np.ndarray,
    sequences: list[np.ndarray],
    offsets: list[int],
    min_share: float,
    min_length: int = 1,
    alphabet_size: int | None = None,
) -> np.ndarray:
    """Trim poorly conserved end columns, then extend while the flank is conserved."""
    t = alphabet_size or int(max(int(s.max()) for s in sequences)) + 1
    lo, hi = 0, len(consensus)
    while hi - lo > min_length and _column_vote(sequences, offsets, lo, t)[1] < min_share:
        lo += 1
    while hi - lo > min_length and _column_vote(sequences, offsets, hi - 1, t)[1] < min_share:
        hi -= 1
    out = [int(x) for x in consensus[lo:hi]]
    limit = min(len(s) for s in sequences)
    while len(out) < limit:
        symbol, share = _column_vote(sequences, offsets, lo - 1, t)
        if share < min_share:
            break
        out.insert(0, symbol)
        lo -= 1
    while len(out) < limit:
        symbol, share = _column_vote(sequences, offsets, hi, t)
        if share < min_share:
            break
        out.append(symbol)
        hi += 1
    return np.array(out, dtype=np.uint8)


def refine_consensus(
    consensus: np.ndarray,
    sequences: list[np.ndarray],
    max_rounds: int,
    alphabet_size: int | None = None,
    min_share: float | None = END_COLUMN_SHARE,
    min_length: int = 1,
) -> tuple[np.ndarray, int, int]:
    """Re-align and re-vote until the consensus or its cost stops improving.

    With ``min_share`` set, each round also trims end columns whose plurality
    share falls below it and extends the consensus over flanking columns that
    reach it.  A same-length proposal must lower the cost to be accepted.
    """
    current = np.asarray(consensus, dtype=np.uint8)
    offsets, cost = best_windows(current, sequences)
    rounds = 0
    while rounds < max_rounds:
        m = len(current)
        windows = [seq[o - 1 : o - 1 + m] for seq, o in zip(sequences, offsets)]
        proposal = voting_phase(windows, alphabet_size)
        if min_share is not None:
            proposal = adjust_ends(
                proposal, sequences, offsets, min_share, min(min_length, m), alphabet_size
            )
        rounds += 1
        if np.array_equal(proposal, current):
            break
        new_offsets, new_cost = best_windows(proposal, sequences)
        if len(proposal) == m and new_cost >= cost:
            break
        current, offsets, cost = proposal, new_offsets, new_cost
    return current, cost, rounds
