import math

import numpy as np
import pytest

from motifseek.errors import InvalidInstanceError, OracleRefusalError
from motifseek.extract import consensus_cost
from motifseek.genmodel import generate_instance, random_motif
from motifseek.oracle import (
    OracleLabel,
    _by_consensus,
    _by_descent,
    _by_offsets,
    brute_force_consensus,
    exhaustive_boundary_oracle,
)
from motifseek.params import AlgorithmType, derive_and_validate_params
from motifseek.pipeline import recover_motif, split_z1_z2
from motifseek.sampling import collision_detection
from motifseek.streams import RandomStreams


def test_single_sequence_takes_first_window():
    seq = np.array([2, 0, 3, 1, 1, 0], dtype=np.uint8)
    result = brute_force_consensus([seq], 3, 4)
    assert result.cost == 0
    assert result.offsets == [1]
    assert result.consensus.tolist() == [2, 0, 3]
    assert result.exact


def test_planted_instance_recovers_motif():
    motif, planted = generate_instance(RandomStreams(5), 4, 30, 6, 0.0)
    result = brute_force_consensus([p.seq for p in planted], 6, 4)
    assert result.label is OracleLabel.EXACT
    assert result.cost == 0
    assert np.array_equal(result.consensus, motif)
    for p, offset in zip(planted, result.offsets):
        assert np.array_equal(p.seq[offset - 1 : offset + 5], motif)


def test_cost_matches_chosen_windows():
    rng = np.random.default_rng(3)
    seqs = [rng.integers(0, 4, 20).astype(np.uint8) for _ in range(4)]
    result = brute_force_consensus(seqs, 5, 4)
    recount = sum(
        int(np.count_nonzero(s[o - 1 : o + 4] != result.consensus))
        for s, o in zip(seqs, result.offsets)
    )
    assert recount == result.cost
    assert consensus_cost(result.consensus, seqs) == result.cost


def test_both_exact_strategies_agree():
    rng = np.random.default_rng(8)
    for _ in range(10):
        seqs = [rng.integers(0, 4, 14).astype(np.uint8) for _ in range(3)]
        by_string = _by_consensus(seqs, 5, 4)
        by_offset = _by_offsets(seqs, 5, 4, 10**3)
        assert by_string.cost == by_offset.cost


def test_heuristic_never_beats_exact():
    motif, planted = generate_instance(RandomStreams(11), 4, 30, 10, 0.1)
    seqs = [p.seq for p in planted]
    assert 4**10 > 1 << 18
    exact = brute_force_consensus(seqs, 10, 4)
    assert exact.label is OracleLabel.EXACT
    heuristic = _by_descent(seqs, 10, 4, RandomStreams(0), 20)
    assert heuristic.label is OracleLabel.HEURISTIC
    assert exact.cost <= heuristic.cost


def test_large_instances_fall_back_to_descent():
    _, planted = generate_instance(RandomStreams(2), 6, 60, 12, 0.0)
    seqs = [p.seq for p in planted]
    assert math.prod(len(s) - 11 for s in seqs) > 10**7
    result = brute_force_consensus(seqs, 12, 4, streams=1, restarts=10)
    assert result.label is OracleLabel.HEURISTIC
    assert not result.exact
    assert len(result.consensus) == 12


def test_oracle_rejects_bad_lengths():
    seqs = [np.zeros(5, dtype=np.uint8)]
    with pytest.raises(InvalidInstanceError):
        brute_force_consensus(seqs, 6)
    with pytest.raises(InvalidInstanceError):
        brute_force_consensus([], 3)


def test_boundary_oracle_trivial_cases(desk_params):
    rng = np.random.default_rng(0)
    seq = rng.integers(0, 4, 80).astype(np.uint8)
    assert exhaustive_boundary_oracle(seq, seq, 0.0, desk_params)[0] == 1
    assert exhaustive_boundary_oracle(seq, seq, 0.0, desk_params)[2] == 1
    a = np.zeros(60, dtype=np.uint8)
    c = np.ones(60, dtype=np.uint8)
    assert exhaustive_boundary_oracle(a, c, 0.0, desk_params) == (None, None, None, None)


def test_boundary_oracle_refuses_large_instances(desk_params):
    big = np.zeros(4000, dtype=np.uint8)
    with pytest.raises(OracleRefusalError):
        exhaustive_boundary_oracle(big, big, 0.0, desk_params)


@pytest.mark.slow
def test_small_instances_agree_with_oracles():
    rng = np.random.default_rng(2024)
    streams = RandomStreams(77)
    boundary_disagreements = []
    same_length = exact = 0
    for case in range(200):
        n = int(rng.integers(24, 41))
        k = int(rng.integers(4, 7))
        m = int(rng.integers(5, 9))
        motif, planted = generate_instance(streams.child("case", case), k, n, m, 0.0)
        seqs = [p.seq for p in planted]
        params, _ = derive_and_validate_params(4, 10, {"window_override": 4}, n=n)

        # Collision detection over full position sets is the all-pairs scan.
        full = np.arange(1, n - 4 + 2)
        for omega in (0.0, params.beta):
            found = collision_detection(seqs[0], full, seqs[1], full, omega, params)
            if found != exhaustive_boundary_oracle(seqs[0], seqs[1], omega, params):
                boundary_disagreements.append((case, omega))

        oracle = brute_force_consensus(seqs, m, 4)
        assert oracle.exact and oracle.cost == 0

        z1, z2 = split_z1_z2(seqs)
        result = recover_motif(
            z1, z2, AlgorithmType.DETERMINISTIC_SUPERQUADRATIC, params, case, alphabet_size=4
        )
        if result.succeeded and len(result.consensus) == m:
            same_length += 1
            assert consensus_cost(result.consensus, seqs) >= oracle.cost
            if np.array_equal(result.consensus, oracle.consensus):
                exact += 1

    assert boundary_disagreements == []
    # About a third of these tiny instances come back at the motif length and
    # nearly all of those spell the motif exactly.
    assert exact >= 40
    assert exact >= 0.9 * same_length
