"""Generated-case checks; each property runs over a thousand random inputs."""

import math
from collections import Counter

import numpy as np
import pytest

from motifseek.extract import match_region, motif_length_median, voting_phase
from motifseek.fasta import FastaRecord, read_fasta, write_fasta
from motifseek.genmodel import generate_instance, rel_hamming
from motifseek.matchkit import MatchKind, match_predicate
from motifseek.params import AlgorithmType, derive_and_validate_params
from motifseek.pipeline import recover_motif, split_z1_z2
from motifseek.results import RoughBoundaries
from motifseek.sampling import improve_boundaries, valid_starts
from motifseek.streams import RandomStreams

CASES = 1000


@pytest.fixture(scope="module")
def params16():
    params, _ = derive_and_validate_params(
        4, 10, {"epsilon": 0.05, "alpha": 0.02, "v": 5, "window_override": 16}, n=1024
    )
    return params


def _near_copy(rng, x, max_flips):
    y = x.copy()
    flips = rng.choice(len(x), int(rng.integers(0, max_flips + 1)), replace=False)
    y[flips] = (y[flips] + rng.integers(1, 4, len(flips))) % 4
    return y


def test_right_is_left_on_reversed_strings(params16):
    rng = np.random.default_rng(1)
    pairs = [
        (MatchKind.RIGHT, MatchKind.LEFT),
        (MatchKind.WEAK_RIGHT, MatchKind.WEAK_LEFT),
    ]
    for _ in range(CASES):
        x1 = rng.integers(0, 4, 16)
        x2 = _near_copy(rng, x1, 4)
        for right, left in pairs:
            assert match_predicate(right, x1, x2, params16) == match_predicate(
                left, x1[::-1].copy(), x2[::-1].copy(), params16
            )


def test_matches_survive_a_looser_beta(params16):
    rng = np.random.default_rng(2)
    for _ in range(CASES):
        x1 = rng.integers(0, 4, 16)
        x2 = _near_copy(rng, x1, 5)
        low = float(rng.uniform(0.0, 0.4))
        high = low + float(rng.uniform(0.0, 0.4))
        for kind in MatchKind:
            if match_predicate(kind, x1, x2, params16, beta=low):
                assert match_predicate(kind, x1, x2, params16, beta=high)


def test_strong_match_implies_weak(params16):
    rng = np.random.default_rng(3)
    for _ in range(CASES):
        x1 = rng.integers(0, 4, 16)
        x2 = _near_copy(rng, x1, 3)
        if match_predicate(MatchKind.LEFT, x1, x2, params16):
            assert match_predicate(MatchKind.WEAK_LEFT, x1, x2, params16)
        if match_predicate(MatchKind.RIGHT, x1, x2, params16):
            assert match_predicate(MatchKind.WEAK_RIGHT, x1, x2, params16)


def test_voting_picks_lowest_most_common_symbol():
    rng = np.random.default_rng(4)
    for _ in range(CASES):
        t = int(rng.integers(2, 6))
        count = int(rng.integers(1, 8))
        width = int(rng.integers(1, 6))
        regions = [rng.integers(0, t, width) for _ in range(count)]
        voted = voting_phase(regions, t)
        for col in range(width):
            tally = Counter(int(r[col]) for r in regions)
            top = max(tally.values())
            assert voted[col] == min(s for s, c in tally.items() if c == top)


def test_median_is_lower_middle_of_known_lengths():
    rng = np.random.default_rng(5)
    for _ in range(CASES):
        rough = []
        for _ in range(int(rng.integers(1, 9))):
            left = int(rng.integers(1, 100))
            right = left + int(rng.integers(0, 40))
            rough.append(RoughBoundaries(left, right))
        lengths = sorted(r.right - r.left for r in rough)
        assert motif_length_median(rough) == lengths[(len(lengths) - 1) // 2]


def test_match_region_stays_inside_search_windows(desk_params):
    rng = np.random.default_rng(6)
    w = desk_params.window
    slack = desk_params.v + desk_params.u2
    for _ in range(CASES):
        seq = rng.integers(0, 4, 80).astype(np.uint8)
        i, j = sorted(int(p) for p in rng.integers(1, 80 - w + 2, 2))
        g_l = _near_copy(rng, seq[i - 1 : i - 1 + w], 1)
        g_r = _near_copy(rng, seq[j - 1 : j - 1 + w], 1)
        left = max(1, i - int(rng.integers(0, slack + 1)))
        right = j + w - 1 + int(rng.integers(0, 3))
        region = match_region(g_l, g_r, seq, RoughBoundaries(left, right), desk_params)
        if region is not None:
            a, b = region
            assert left <= a <= left + slack
            assert right - slack <= b <= right
            assert a <= b


def test_rel_hamming_is_a_symmetric_fraction():
    rng = np.random.default_rng(7)
    for _ in range(CASES):
        m = int(rng.integers(1, 30))
        s1 = rng.integers(0, 4, m)
        s2 = rng.integers(0, 4, m)
        d = rel_hamming(s1, s2)
        assert d == rel_hamming(s2, s1)
        assert 0.0 <= d <= 1.0
        assert rel_hamming(s1, s1) == 0.0
        assert d * m == pytest.approx(round(d * m))


def test_streams_depend_only_on_their_key():
    rng = np.random.default_rng(8)
    for _ in range(CASES):
        seed = int(rng.integers(0, 2**31))
        index = int(rng.integers(0, 50))
        iteration = int(rng.integers(0, 5))
        first = RandomStreams(seed)
        second = RandomStreams(seed)
        # Draw from another phase first; the keyed stream must not notice.
        second.stream("anchor", index).integers(0, 4, 3)
        a = first.stream("initial", index, iteration).integers(0, 1 << 30, 4)
        b = second.stream("initial", index, iteration).integers(0, 1 << 30, 4)
        assert np.array_equal(a, b)
        c = first.child("trial", index).stream("initial").integers(0, 1 << 30, 4)
        d = second.child("trial", index).stream("initial").integers(0, 1 << 30, 4)
        assert np.array_equal(c, d)


def test_fasta_files_read_back_unchanged(tmp_path):
    rng = np.random.default_rng(9)
    path = str(tmp_path / "cases.fasta")
    for case in range(CASES):
        records = [
            FastaRecord(f"c{case}_{i}", rng.integers(0, 4, int(rng.integers(1, 200))).astype(np.uint8))
            for i in range(int(rng.integers(1, 5)))
        ]
        write_fasta(records, path, width=int(rng.integers(1, 90)))
        back = read_fasta(path)
        assert [r.id for r in back] == [r.id for r in records]
        for a, b in zip(records, back):
            assert a.seq.tolist() == b.seq.tolist()


def test_fixed_seed_recovery_repeats_exactly():
    rng = np.random.default_rng(10)
    algos = list(AlgorithmType)
    for case in range(CASES):
        n = int(rng.integers(24, 41))
        k = int(rng.integers(4, 7))
        m = int(rng.integers(5, 9))
        _, planted = generate_instance(RandomStreams(case), k, n, m, 0.0)
        params, _ = derive_and_validate_params(4, 10, {"window_override": 4}, n=n)
        z1, z2 = split_z1_z2([p.seq for p in planted])
        algo = algos[case % len(algos)]
        first = recover_motif(z1, z2, algo, params, case, alphabet_size=4)
        second = recover_motif(z1, z2, algo, params, case, alphabet_size=4)
        assert first.failed == second.failed
        assert first.consensus.tobytes() == second.consensus.tobytes()
        assert first.regions == second.regions
        assert first.boundaries == second.boundaries
        assert first.counters == second.counters


def test_improved_boundaries_stay_near_their_anchors(desk_params):
    rng = np.random.default_rng(11)
    w = desk_params.window
    for _ in range(CASES):
        s1 = rng.integers(0, 4, 80).astype(np.uint8)
        s2 = rng.integers(0, 4, 80).astype(np.uint8)
        lo1, hi1 = valid_starts(len(s1), w)
        lo2, hi2 = valid_starts(len(s2), w)
        a_l, a_r = sorted(int(p) for p in rng.integers(lo1, hi1 + 1, 2))
        f_l, f_r = sorted(int(p) for p in rng.integers(lo2, hi2 + 1, 2))
        s2[f_l - 1 : f_l - 1 + w] = s1[a_l - 1 : a_l - 1 + w]
        s2[f_r - 1 : f_r - 1 + w] = s1[a_r - 1 : a_r - 1 + w]
        L = float(rng.uniform(1, 12))
        span = math.ceil(L)
        a1, a1_max, f2, f2_max = improve_boundaries(s1, a_l, a_r, s2, f_l, f_r, L, desk_params)

        for found, anchor, (lo, hi) in (
            (a1, a_l, (lo1, hi1)),
            (a1_max, a_r, (lo1, hi1)),
            (f2, f_l, (lo2, hi2)),
            (f2_max, f_r, (lo2, hi2)),
        ):
            if found is not None:
                assert max(lo, anchor - span) <= found <= min(hi, anchor + span)

        # An anchor pair that still matches qualifies itself.
        if np.array_equal(s1[a_l - 1 : a_l - 1 + w], s2[f_l - 1 : f_l - 1 + w]):
            assert a1 <= a_l and f2 <= f_l
        if np.array_equal(s1[a_r - 1 : a_r - 1 + w], s2[f_r - 1 : f_r - 1 + w]):
            assert a1_max >= a_r and f2_max >= f_r
