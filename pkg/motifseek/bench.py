"""Accuracy experiments and work-scaling sweeps.

Acceptance rests on the operation counters; wall time is only reported
when asked for, so reruns with the same seed give byte-identical TSVs.
"""

import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from motifseek.errors import InvalidConfigurationError
from motifseek.genmodel import (
    DNA,
    THETA,
    Alphabet,
    MutationModel,
    generate_instance,
)
from motifseek.params import AlgorithmType, DEFAULT_X, derive_and_validate_params
from motifseek.pipeline import recover_with_restarts
from motifseek.results import WorkCounters
from motifseek.sampling import initial_boundaries
from motifseek.streams import PHASE_TRIAL, RandomStreams

ACCURACY_COLUMNS = (
    "trial",
    "exact_match",
    "mismatch_count",
    "consensus",
    "positions_sampled",
    "window_comparisons",
    "character_comparisons",
)
SCALING_COLUMNS = (
    "n",
    "motif_len",
    "seeds",
    "positions_sampled",
    "window_comparisons",
    "preprocessing_work",
)


@dataclass
class ExperimentConfig:
    trials: int = 50
    n: int = 600
    k: int = 20
    motif_len: int = 15
    alpha: float | None = None  # None -> 1/motif_len
    algo: AlgorithmType = AlgorithmType.DETERMINISTIC_SUPERQUADRATIC
    seed: int = 0
    overrides: dict = field(default_factory=dict)
    report_path: str | None = None
    window: int | None = None
    model: MutationModel = THETA
    alphabet: Alphabet = DNA
    x: int = DEFAULT_X
    refine_rounds: int = 0
    restarts: int = 1
    include_timing: bool = False

    def __post_init__(self):
        self.algo = AlgorithmType.parse(self.algo)
        if self.trials < 1:
            raise InvalidConfigurationError("trials must be at least 1")
        if min(self.n, self.k, self.motif_len) < 1:
            raise InvalidConfigurationError("n, k and motif_len must be positive")
        if self.motif_len > self.n:
            raise InvalidConfigurationError("motif_len cannot exceed n")
        if self.k // 4 < 1:
            raise InvalidConfigurationError("k must be at least 4 to fill Z1 and Z2")
        if self.alpha is None:
            self.alpha = 1.0 / self.motif_len

    def ledger_overrides(self) -> dict:
        pinned = {"alpha": self.alpha, **self.overrides}
        if self.window is not None:
            pinned["window_override"] = self.window
        return pinned


@dataclass
class TrialRow:
    trial: int
    exact_match: bool
    mismatch_count: int
    consensus: str
    counters: WorkCounters
    wall_time: float | None = None

    def cells(self, include_timing: bool) -> list[str]:
        c = self.counters
        cells = [
            str(self.trial),
            "1" if self.exact_match else "0",
            str(self.mismatch_count),
            self.consensus or "-",
            str(c.positions_sampled),
            str(c.window_comparisons),
            str(c.character_comparisons),
        ]
        if include_timing:
            cells.append(f"{self.wall_time:.4f}")
        return cells


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[TrialRow] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return 100.0 * sum(r.exact_match for r in self.rows) / len(self.rows)

    @property
    def mean_mismatches(self) -> float:
        return float(np.mean([r.mismatch_count for r in self.rows]))

    def mean_counters(self) -> dict:
        keys = WorkCounters().to_dict()
        return {
            key: float(np.mean([r.counters.to_dict()[key] for r in self.rows])) for key in keys
        }

    def to_tsv(self) -> str:
        header = list(ACCURACY_COLUMNS)
        if self.config.include_timing:
            header.append("wall_time")
        lines = ["\t".join(header)]
        lines += ["\t".join(r.cells(self.config.include_timing)) for r in self.rows]
        return "\n".join(lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(self.to_tsv())


def score_consensus(consensus: np.ndarray, motif: np.ndarray, failed: bool) -> tuple[bool, int]:
    """Exact flag and mismatch count; a length gap counts as mismatches."""
    if failed:
        return False, len(motif)
    overlap = min(len(consensus), len(motif))
    mismatches = int(np.count_nonzero(consensus[:overlap] != motif[:overlap]))
    mismatches += abs(len(consensus) - len(motif))
    return mismatches == 0, mismatches


def run_accuracy_experiment(
    config: ExperimentConfig,
    on_event: Callable[[dict], None] | None = None,
) -> ExperimentReport:
    emit = on_event or (lambda _: None)
    alphabet = config.alphabet
    params, violations = derive_and_validate_params(
        alphabet.size, config.x, config.ledger_overrides(), config.n
    )
    report = ExperimentReport(config, violations=violations)
    root = RandomStreams(config.seed)

    for trial in range(config.trials):
        streams = root.child(PHASE_TRIAL, trial)
        started = time.perf_counter()
        motif, planted = generate_instance(
            streams, config.k, config.n, config.motif_len, config.alpha, config.model, alphabet
        )
        result = recover_with_restarts(
            [p.seq for p in planted],
            config.algo,
            params,
            streams,
            restarts=config.restarts,
            refine_rounds=config.refine_rounds,
            alphabet_size=alphabet.size,
        )
        exact, mismatches = score_consensus(result.consensus, motif, result.failed)
        row = TrialRow(
            trial=trial,
            exact_match=exact,
            mismatch_count=mismatches,
            consensus="" if result.failed else alphabet.decode(result.consensus),
            counters=result.counters,
            wall_time=time.perf_counter() - started,
        )
        report.rows.append(row)
        try:
            emit({
                "type": "trial",
                "trial": trial,
                "exact_match": exact,
                "mismatch_count": mismatches,
            })
        except Exception:
            pass

    if config.report_path:
        report.write(config.report_path)
    return report


# ── Scaling ─────────────────────────────────────────────────────────────


@dataclass
class ScalingPoint:
    n: int
    motif_len: int
    seeds: int
    positions_sampled: float
    window_comparisons: float

    @property
    def preprocessing_work(self) -> float:
        return self.positions_sampled + self.window_comparisons


@dataclass
class ScalingReport:
    algo: AlgorithmType
    points: list[ScalingPoint]

    @property
    def preprocessing_slope(self) -> float:
        return fit_loglog_slope(
            [p.n for p in self.points], [p.preprocessing_work for p in self.points]
        )

    @property
    def window_slope(self) -> float:
        return fit_loglog_slope(
            [p.n for p in self.points], [p.window_comparisons for p in self.points]
        )

    def to_tsv(self) -> str:
        lines = ["\t".join(SCALING_COLUMNS)]
        for p in self.points:
            lines.append(
                f"{p.n}\t{p.motif_len}\t{p.seeds}\t{p.positions_sampled:.2f}\t"
                f"{p.window_comparisons:.2f}\t{p.preprocessing_work:.2f}"
            )
        lines.append(
            f"slope\t\t\t\t{self.window_slope:.4f}\t{self.preprocessing_slope:.4f}"
        )
        return "\n".join(lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(self.to_tsv())


def fit_loglog_slope(xs, ys) -> float:
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)


def run_scaling_benchmark(
    ns: list[int],
    algo: AlgorithmType | str = AlgorithmType.RANDOMIZED_SUBLINEAR,
    seeds: int = 5,
    seed: int = 0,
    alpha: float = 0.0,
    overrides: dict | None = None,
    alphabet: Alphabet = DNA,
    report_path: str | None = None,
    on_event: Callable[[dict], None] | None = None,
) -> ScalingReport:
    """Mean preprocessing counters of initial boundary detection per n.

    Each instance is one Z1 pair with a motif of length ceil(n^(2/5)).  Up to
    n = 2**16 point selection keeps every position, so the fitted slope stays
    near 1; sublinear growth only shows beyond that.
    """
    ns = sorted(set(int(n) for n in ns))
    if len(ns) < 4:
        raise InvalidConfigurationError("a scaling sweep needs at least four values of n")
    if seeds < 1:
        raise InvalidConfigurationError("seeds must be at least 1")
    algo = AlgorithmType.parse(algo)
    emit = on_event or (lambda _: None)
    root = RandomStreams(seed)
    points = []
    for n in ns:
        motif_len = math.ceil(n**0.4)
        params, _ = derive_and_validate_params(
            alphabet.size, DEFAULT_X, {"alpha": alpha, **(overrides or {})}, n
        )
        sampled, compared = [], []
        for s in range(seeds):
            streams = root.child(PHASE_TRIAL, n).child(PHASE_TRIAL, s)
            _, pair = generate_instance(streams, 2, n, motif_len, alpha, THETA, alphabet)
            counters = WorkCounters()
            initial_boundaries(
                pair[0].seq, pair[1].seq, algo, params, streams.stream("scaling"), counters
            )
            sampled.append(counters.positions_sampled)
            compared.append(counters.window_comparisons)
        point = ScalingPoint(n, motif_len, seeds, float(np.mean(sampled)), float(np.mean(compared)))
        points.append(point)
        try:
            emit({
                "type": "scaling_point",
                "n": n,
                "preprocessing_work": point.preprocessing_work,
            })
        except Exception:
            pass

    report = ScalingReport(algo, points)
    if report_path:
        report.write(report_path)
    return report
