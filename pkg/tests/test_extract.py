import numpy as np
import pytest

from motifseek.errors import EstimationFailureError, InvalidArgumentError
from motifseek.extract import (
    adjust_ends,
    best_windows,
    consensus_cost,
    consensus_regions,
    extract_phase,
    extract_threshold,
    match_region,
    motif_length_median,
    refine_consensus,
    voting_phase,
)
from motifseek.genmodel import FixedPlacement, generate_planted, random_motif
from motifseek.results import RoughBoundaries, WorkCounters
from motifseek.streams import RandomStreams


def test_median_odd_count():
    assert motif_length_median([(0, 16), (0, 16), (0, 15), (0, 17), (0, 16)]) == 16


def test_median_even_count_takes_lower():
    assert motif_length_median([(0, 10), (0, 12), (0, 14), (0, 16)]) == 12


def test_median_skips_unknown():
    rough = [RoughBoundaries(), RoughBoundaries(5, 25), (None, 9)]
    assert motif_length_median(rough) == 20
    with pytest.raises(EstimationFailureError):
        motif_length_median([RoughBoundaries(), (None, None)])


def test_voting_worked_column(worked_alphabet):
    column = [worked_alphabet.encode(ch) for ch in "SSSAS"]
    assert worked_alphabet.decode(voting_phase(column, worked_alphabet.size)) == "S"


def test_voting_tie_goes_to_lowest_symbol():
    regions = [np.array([0]), np.array([0]), np.array([1]), np.array([1])]
    assert voting_phase(regions, 4).tolist() == [0]


def test_voting_skips_empty_and_checks_lengths():
    regions = [np.array([2, 3]), None, np.array([2, 3])]
    counters = WorkCounters()
    assert voting_phase(regions, 4, counters).tolist() == [2, 3]
    assert counters.votes_cast == 4
    with pytest.raises(InvalidArgumentError):
        voting_phase([np.array([1, 2]), np.array([1])], 4)
    with pytest.raises(InvalidArgumentError):
        voting_phase([None, None], 4)


def _planted(n, motif, start, seed):
    return generate_planted(
        np.random.default_rng(seed), n, motif, 0.0, placement=FixedPlacement(start)
    )


def test_match_region_exact_boundaries(desk_params):
    w = desk_params.window
    motif = random_motif(np.random.default_rng(1), 30)
    p = _planted(200, motif, 71, 2)
    region = match_region(motif[:w], motif[-w:], p.seq, RoughBoundaries(p.lb, p.rb), desk_params)
    assert region == (p.lb, p.rb)


def test_match_region_misses_far_boundaries(desk_params):
    w = desk_params.window
    motif = random_motif(np.random.default_rng(1), 30)
    p = _planted(200, motif, 71, 2)
    slack = desk_params.v + desk_params.u2
    rough = RoughBoundaries(p.lb + slack + 1, p.rb + slack + 1)
    assert match_region(motif[:w], motif[-w:], p.seq, rough, desk_params) is None
    assert match_region(motif[:w], motif[-w:], p.seq, RoughBoundaries(), desk_params) is None


def test_match_region_stays_in_search_window(desk_params):
    w = desk_params.window
    slack = desk_params.v + desk_params.u2
    motif = random_motif(np.random.default_rng(5), 30)
    p = _planted(200, motif, 71, 6)
    rough = RoughBoundaries(p.lb - 3, p.rb + 2)
    a, b = match_region(motif[:w], motif[-w:], p.seq, rough, desk_params)
    assert rough.left <= a <= rough.left + slack
    assert rough.right - slack <= b <= rough.right


def test_match_region_worked_fixture(worked_sets, worked_params, worked_alphabet):
    _, z2 = worked_sets
    w = worked_params.window
    motif = worked_alphabet.encode("TTTTTAACGATTAGCS")
    s1 = z2[0]
    assert worked_alphabet.decode(s1[11:27]) == "TTTTTAACGGTTAGCS"
    region = match_region(motif[:w], motif[-w:], s1, RoughBoundaries(10, 30), worked_params)
    assert region == (12, 27)


def test_extract_threshold_clamps_to_half(desk_params):
    assert extract_threshold(10, desk_params) <= 5
    assert extract_threshold(1, desk_params) == 0


def test_extract_on_planted_desk_instance(desk_params):
    streams = RandomStreams(3)
    motif = random_motif(streams.stream("motif"), 25)
    anchor = _planted(300, motif, 120, 100)
    z2 = [_planted(300, motif, 20 + 20 * j, 200 + j) for j in range(10)]
    rough = [RoughBoundaries(p.lb, p.rb) for p in z2]
    outcome = extract_phase(
        anchor.seq, RoughBoundaries(anchor.lb, anchor.rb), [p.seq for p in z2], rough, desk_params
    )
    assert outcome is not None
    assert outcome.candidate == (anchor.lb, anchor.rb)
    assert outcome.empty_count == 0
    assert outcome.regions == [(p.lb, p.rb) for p in z2]


def test_extract_without_usable_boundaries(desk_params):
    motif = random_motif(np.random.default_rng(8), 25)
    anchor = _planted(300, motif, 120, 9)
    z2 = [_planted(300, motif, 50, 10 + j).seq for j in range(4)]
    unknown = [RoughBoundaries()] * 4
    assert (
        extract_phase(anchor.seq, RoughBoundaries(anchor.lb, anchor.rb), z2, unknown, desk_params)
        is None
    )
    assert extract_phase(anchor.seq, RoughBoundaries(), z2, unknown, desk_params) is None


def test_best_windows_and_cost():
    seqs = [np.array([3, 0, 1, 2]), np.array([0, 1, 3, 3]), np.array([2, 2, 0, 0])]
    offsets, total = best_windows(np.array([0, 1]), seqs)
    assert offsets == [2, 1, 3]
    assert total == 1
    assert consensus_cost(np.array([0, 1]), seqs) == 1


def test_refine_fixes_one_wrong_column():
    rng = np.random.default_rng(4)
    motif = random_motif(rng, 10)
    seqs = [generate_planted(rng, 60, motif, 0.0).seq for _ in range(8)]
    start = motif.copy()
    start[4] = (start[4] + 1) % 4
    refined, cost, rounds = refine_consensus(start, seqs, 5, 4, min_share=None)
    assert np.array_equal(refined, motif)
    assert cost == 0
    assert 1 <= rounds <= 5


def test_refine_zero_rounds_keeps_input():
    seqs = [np.array([0, 1, 2, 3])]
    start = np.array([1, 2], dtype=np.uint8)
    refined, cost, rounds = refine_consensus(start, seqs, 0)
    assert refined.tolist() == [1, 2] and cost == 0 and rounds == 0


def _flanked_block(rng):
    """Ten sequences sharing a 12-symbol block at columns 10..21 (0-based).

    Columns 8, 9 and 22 cycle through the alphabet, so no symbol there
    reaches a 0.7 share.
    """
    block = rng.integers(0, 4, 12).astype(np.uint8)
    seqs = []
    for i in range(10):
        seq = rng.integers(0, 4, 40).astype(np.uint8)
        seq[10:22] = block
        seq[8] = (i + 2) % 4
        seq[9] = i % 4
        seq[22] = (i + 1) % 4
        seqs.append(seq)
    return block, seqs


def test_adjust_ends_trims_then_extends():
    block, seqs = _flanked_block(np.random.default_rng(11))
    # Starts two columns early and stops two short.
    start = seqs[0][8:20].copy()
    adjusted = adjust_ends(start, seqs, [9] * 10, 0.7, min_length=4, alphabet_size=4)
    assert adjusted.tolist() == block.tolist()


def test_adjust_ends_keeps_min_length():
    _, seqs = _flanked_block(np.random.default_rng(12))
    start = seqs[0][8:20].copy()
    adjusted = adjust_ends(start, seqs, [9] * 10, 1.01, min_length=4, alphabet_size=4)
    assert adjusted.tolist() == start[8:12].tolist()


def test_refine_grows_a_short_consensus():
    block, seqs = _flanked_block(np.random.default_rng(13))
    refined, cost, rounds = refine_consensus(block[2:10], seqs, 10, 4, min_length=4)
    assert refined.tolist() == block.tolist()
    assert cost == 0
    assert rounds == 2


def test_consensus_regions_follow_the_closest_window():
    rng = np.random.default_rng(14)
    block, seqs = _flanked_block(rng)
    background = rng.integers(0, 4, 40).astype(np.uint8)
    regions = consensus_regions(block, seqs + [background], 0.1)
    assert regions[:10] == [(11, 22)] * 10
    assert regions[10] is None
