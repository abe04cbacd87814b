from dataclasses import dataclass, field

import numpy as np


@dataclass
class WorkCounters:
    positions_sampled: int = 0
    window_comparisons: int = 0
    character_comparisons: int = 0
    predicate_checks: int = 0
    votes_cast: int = 0

    @property
    def preprocessing_work(self) -> int:
        """Sampling plus collision work, the quantity the scaling sweep fits."""
        return self.positions_sampled + self.window_comparisons

    def add(self, other: "WorkCounters") -> None:
        self.positions_sampled += other.positions_sampled
        self.window_comparisons += other.window_comparisons
        self.character_comparisons += other.character_comparisons
        self.predicate_checks += other.predicate_checks
        self.votes_cast += other.votes_cast

    def to_dict(self) -> dict:
        return {
            "positions_sampled": self.positions_sampled,
            "window_comparisons": self.window_comparisons,
            "character_comparisons": self.character_comparisons,
            "predicate_checks": self.predicate_checks,
            "votes_cast": self.votes_cast,
        }


@dataclass(frozen=True)
class RoughBoundaries:
    """Estimated motif region of one sequence.

    ``left`` is a window start; ``right`` is the last position of the
    rightmost qualifying window, so ``right - left`` estimates the motif
    length.  ``None`` means unknown.
    """

    left: int | None = None
    right: int | None = None

    def __post_init__(self):
        if self.left is not None and self.right is not None and self.left > self.right:
            raise ValueError(f"left boundary {self.left} after right boundary {self.right}")

    @property
    def known(self) -> bool:
        return self.left is not None and self.right is not None

    @property
    def length(self) -> int | None:
        return self.right - self.left if self.known else None

    def to_dict(self) -> dict:
        return {"left": self.left, "right": self.right}


UNKNOWN_BOUNDARIES = RoughBoundaries()


@dataclass
class RecoveryResult:
    consensus: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.uint8))
    # Per Z2 sequence: (a, b) 1-based inclusive, or None for EMPTY.
    regions: list[tuple[int, int] | None] = field(default_factory=list)
    # Z1 sequences first, then Z2, in the order they were split.
    boundaries: list[RoughBoundaries] = field(default_factory=list)
    # Caller's index of each Z1 / Z2 sequence; boundaries and regions follow
    # these orders.
    z1_indices: list[int] = field(default_factory=list)
    z2_indices: list[int] = field(default_factory=list)
    counters: WorkCounters = field(default_factory=WorkCounters)
    guarantee_regime: bool = False
    anchor: int | None = None
    l_motif: int | None = None
    block_size: int | None = None
    candidate: tuple[int, int] | None = None
    failed: bool = False
    failure_reason: str = ""

    @property
    def succeeded(self) -> bool:
        return not self.failed

    def to_dict(self, alphabet=None) -> dict:
        consensus = (
            alphabet.decode(self.consensus) if alphabet is not None else self.consensus.tolist()
        )
        return {
            "consensus": consensus,
            "regions": [list(r) if r else None for r in self.regions],
            "boundaries": [b.to_dict() for b in self.boundaries],
            "z1_indices": list(self.z1_indices),
            "z2_indices": list(self.z2_indices),
            "counters": self.counters.to_dict(),
            "guarantee_regime": self.guarantee_regime,
            "anchor": self.anchor,
            "l_motif": self.l_motif,
            "block_size": self.block_size,
            "candidate": list(self.candidate) if self.candidate else None,
            "failed": self.failed,
            "failure_reason": self.failure_reason,
        }
