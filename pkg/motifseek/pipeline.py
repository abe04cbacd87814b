import math
from collections.abc import Callable

import numpy as np

from motifseek.errors import InvalidArgumentError
from motifseek.extract import (
    consensus_cost,
    consensus_regions,
    extract_phase,
    motif_length_median,
    refine_consensus,
    voting_phase,
)
from motifseek.params import AlgorithmType, DerivedParams, omega_for
from motifseek.results import RecoveryResult, RoughBoundaries, WorkCounters
from motifseek.sampling import (
    clip_interval,
    collision_detection,
    improve_boundaries,
    initial_boundaries,
    point_selection,
    to_rough,
    valid_starts,
)
from motifseek.streams import (
    PHASE_ANCHOR,
    PHASE_INITIAL,
    PHASE_RESTART,
    PHASE_Z2,
    RandomStreams,
)


class MotifRecovery:
    """Two-phase motif recovery over a Z1/Z2 split.

    Z1 holds 2*k1 sequences paired as (S_1, S_2), (S_3, S_4), ...; the odd
    member of each pair is the anchor later used to extract motif regions
    from every Z2 sequence.
    """

    def __init__(
        self,
        params: DerivedParams,
        algo: AlgorithmType | str = AlgorithmType.RANDOMIZED_SUBLINEAR,
        on_event: Callable[[dict], None] | None = None,
        alphabet_size: int | None = None,
    ):
        self.params = params
        self.algo = AlgorithmType.parse(algo)
        self.alphabet_size = alphabet_size
        # Structured progress events; the CLI renders them, library callers
        # may record them.  Defaults to a no-op.
        self._on_event: Callable[[dict], None] = on_event or (lambda _: None)

    def _emit(self, event: dict) -> None:
        try:
            self._on_event(event)
        except Exception:
            pass  # A broken listener never stops a run

    # ── Public API ──────────────────────────────────────────────────────

    def run(
        self,
        z1: list[np.ndarray],
        z2: list[np.ndarray],
        streams: RandomStreams | int = 0,
    ) -> RecoveryResult:
        if isinstance(streams, int):
            streams = RandomStreams(streams)
        z1 = [np.asarray(s, dtype=np.uint8) for s in z1]
        z2 = [np.asarray(s, dtype=np.uint8) for s in z2]
        self._check_inputs(z1, z2)

        params = self.params
        counters = WorkCounters()
        result = RecoveryResult(
            counters=counters,
            guarantee_regime=params.guarantee_regime,
            z1_indices=list(range(len(z1))),
            z2_indices=list(range(len(z1), len(z1) + len(z2))),
        )
        k1 = len(z1) // 2
        self._emit({
            "type": "started",
            "algo": self.algo.value,
            "k1": k1,
            "k2": len(z2),
            "window": params.window,
            "guarantee_regime": params.guarantee_regime,
        })

        z1_rough = self._initial_phase(z1, streams, counters)
        result.boundaries = list(z1_rough)
        anchors = [i for i in range(k1) if z1_rough[2 * i].known]
        if not anchors:
            return self._fail(result, "no collision found in any Z1 pair")

        l_motif = motif_length_median([z1_rough[2 * i] for i in anchors])
        L = max(1, math.ceil(l_motif / 4))
        result.l_motif, result.block_size = l_motif, L
        self._emit({"type": "motif_length", "l_motif": l_motif, "L": L})

        z2_points = [
            point_selection(
                seq,
                L,
                [valid_starts(len(seq), params.window)],
                self.algo,
                params,
                streams.stream(PHASE_Z2, j),
                counters,
            )
            for j, seq in enumerate(z2)
        ]

        z2_rough: list[RoughBoundaries] = []
        for i in anchors:
            anchor, rough = z1[2 * i], z1_rough[2 * i]
            z2_rough = self._z2_boundaries(anchor, rough, z2, z2_points, L, i, streams, counters)
            known = sum(1 for r in z2_rough if r.known)
            self._emit({"type": "anchor", "anchor": i, "z2_known": known, "k2": len(z2)})

            outcome = extract_phase(anchor, rough, z2, z2_rough, params, counters)
            if outcome is None:
                self._emit({"type": "extract", "anchor": i, "candidate": None})
                continue
            self._emit({
                "type": "extract",
                "anchor": i,
                "candidate": list(outcome.candidate),
                "empty": outcome.empty_count,
            })

            windows = [
                None if region is None else seq[region[0] - 1 : region[1]]
                for seq, region in zip(z2, outcome.regions)
            ]
            result.consensus = voting_phase(windows, self.alphabet_size, counters)
            result.regions = outcome.regions
            result.boundaries = list(z1_rough) + z2_rough
            result.anchor = i
            result.candidate = outcome.candidate
            self._emit({
                "type": "voted",
                "anchor": i,
                "length": len(result.consensus),
                "counters": counters.to_dict(),
            })
            return result

        result.boundaries = list(z1_rough) + z2_rough
        return self._fail(result, "every Z1 anchor returned no candidate")

    # ── Phases ──────────────────────────────────────────────────────────

    def _check_inputs(self, z1: list[np.ndarray], z2: list[np.ndarray]) -> None:
        if len(z1) < 2 or len(z1) % 2:
            raise InvalidArgumentError(
                f"Z1 must hold a positive even number of sequences, got {len(z1)}"
            )
        if not z2:
            raise InvalidArgumentError("Z2 must hold at least one sequence")
        w = self.params.window
        for seq in z1 + z2:
            if len(seq) < w:
                raise InvalidArgumentError(
                    f"sequence of length {len(seq)} is shorter than the window {w}"
                )

    def _initial_phase(
        self, z1: list[np.ndarray], streams: RandomStreams, counters: WorkCounters
    ) -> list[RoughBoundaries]:
        rough: list[RoughBoundaries] = []
        for i in range(len(z1) // 2):
            found = initial_boundaries(
                z1[2 * i],
                z1[2 * i + 1],
                self.algo,
                self.params,
                streams.stream(PHASE_INITIAL, i),
                counters,
            )
            pair = found if found is not None else (RoughBoundaries(), RoughBoundaries())
            rough.extend(pair)
            self._emit({
                "type": "initial_boundaries",
                "pair": i,
                "found": found is not None,
                "left": pair[0].left,
                "right": pair[0].right,
            })
        return rough

    def _z2_boundaries(
        self,
        anchor: np.ndarray,
        rough: RoughBoundaries,
        z2: list[np.ndarray],
        z2_points: list[np.ndarray],
        L: int,
        index: int,
        streams: RandomStreams,
        counters: WorkCounters,
    ) -> list[RoughBoundaries]:
        params = self.params
        w = params.window
        bounds = valid_starts(len(anchor), w)
        right_start = rough.right - w + 1
        intervals = [
            clip_interval(rough.left - 2 * L, rough.left + 2 * L, bounds),
            clip_interval(right_start - 2 * L, right_start + 2 * L, bounds),
        ]
        u1 = point_selection(
            anchor, L, intervals, self.algo, params, streams.stream(PHASE_ANCHOR, index), counters
        )
        omega = omega_for(self.algo, params)

        found: list[RoughBoundaries] = []
        for seq, u2 in zip(z2, z2_points):
            a, a_max, e, e_max = collision_detection(anchor, u1, seq, u2, omega, params, counters)
            if a is None:
                found.append(RoughBoundaries())
                continue
            _, _, f2, f2_max = improve_boundaries(
                anchor, a, a_max, seq, e, e_max, 2 * L, params, counters
            )
            boundary = to_rough(f2, f2_max, w)
            found.append(boundary if boundary.known else to_rough(e, e_max, w))
        return found

    def _fail(self, result: RecoveryResult, reason: str) -> RecoveryResult:
        result.failed = True
        result.failure_reason = reason
        self._emit({"type": "failed", "reason": reason})
        return result


def recover_motif(
    z1: list[np.ndarray],
    z2: list[np.ndarray],
    algo: AlgorithmType | str,
    params: DerivedParams,
    streams: RandomStreams | int = 0,
    on_event: Callable[[dict], None] | None = None,
    alphabet_size: int | None = None,
) -> RecoveryResult:
    return MotifRecovery(params, algo, on_event, alphabet_size).run(z1, z2, streams)


def split_z1_z2(sequences: list[np.ndarray], pairs: int | None = None):
    """First 2*pairs sequences form Z1, the rest Z2; pairs defaults to k // 4."""
    k = len(sequences)
    pairs = k // 4 if pairs is None else pairs
    if pairs < 1 or 2 * pairs >= k:
        raise InvalidArgumentError(
            f"cannot split {k} sequences into {pairs} Z1 pair(s) and a non-empty Z2"
        )
    return list(sequences[: 2 * pairs]), list(sequences[2 * pairs :])


def recover_with_restarts(
    sequences: list[np.ndarray],
    algo: AlgorithmType | str,
    params: DerivedParams,
    streams: RandomStreams,
    restarts: int = 1,
    refine_rounds: int = 0,
    pairs: int | None = None,
    on_event: Callable[[dict], None] | None = None,
    alphabet_size: int | None = None,
) -> RecoveryResult:
    """Repeat recovery over reshuffled Z1/Z2 splits; keep the cheapest consensus.

    Restart 0 keeps the input order.  Each consensus is optionally refined,
    then scored by its total best-window distance over every sequence; a
    refined consensus gets its Z2 regions recomputed from its closest
    windows.  The returned indices refer to ``sequences``.  Counters sum
    over all restarts.
    """
    if restarts < 1:
        raise InvalidArgumentError("restarts must be at least 1")
    sequences = [np.asarray(s, dtype=np.uint8) for s in sequences]
    total = WorkCounters()
    best: RecoveryResult | None = None
    best_cost = None
    last: RecoveryResult | None = None
    for r in range(restarts):
        sub = streams.child(PHASE_RESTART, r)
        order = (
            np.arange(len(sequences))
            if r == 0
            else sub.stream(PHASE_RESTART).permutation(len(sequences))
        )
        shuffled = [sequences[i] for i in order]
        z1, z2 = split_z1_z2(shuffled, pairs)
        result = recover_motif(z1, z2, algo, params, sub, on_event, alphabet_size)
        result.z1_indices = [int(order[i]) for i in result.z1_indices]
        result.z2_indices = [int(order[i]) for i in result.z2_indices]
        total.add(result.counters)
        last = result
        if result.failed:
            continue
        cost = consensus_cost(result.consensus, sequences)
        if refine_rounds > 0:
            result.consensus, cost, _ = refine_consensus(
                result.consensus,
                sequences,
                refine_rounds,
                alphabet_size,
                min_length=params.window,
            )
            result.regions = consensus_regions(result.consensus, z2, params.beta)
        if best is None or cost < best_cost:
            best, best_cost = result, cost
    chosen = best if best is not None else last
    chosen.counters = total
    return chosen
