"""Planted-motif sequence generation and the two distance primitives.

A sequence is a numpy ``uint8`` array of alphabet indices.  Positions
exposed to callers (``lb``, ``rb``, ``mutated``) are 1-based inclusive.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from motifseek.errors import InvalidArgumentError, InvalidInstanceError
from motifseek.streams import PHASE_GENERATE, PHASE_MOTIF, RandomStreams

# Adversarial replacement: (rng, motif position 1-based, original symbol) -> new symbol
ReplacementFn = Callable[[np.random.Generator, int, int], int]


class Alphabet:
    """Ordered symbol set; symbol index order is the tie-break order."""

    def __init__(self, symbols: str = "ACGT"):
        symbols = symbols.upper()
        if len(symbols) < 2:
            raise InvalidArgumentError("an alphabet needs at least two symbols")
        if len(set(symbols)) != len(symbols):
            raise InvalidArgumentError(f"alphabet '{symbols}' repeats a symbol")
        self.symbols = symbols
        self._lookup = np.full(256, 255, dtype=np.uint8)
        for i, ch in enumerate(symbols):
            self._lookup[ord(ch)] = i
            self._lookup[ord(ch.lower())] = i

    @property
    def size(self) -> int:
        return len(self.symbols)

    def first_invalid(self, text: str) -> int | None:
        """0-based offset of the first symbol outside the alphabet, if any."""
        for offset, ch in enumerate(text):
            if ord(ch) > 255 or self._lookup[ord(ch)] == 255:
                return offset
        return None

    def encode(self, text: str) -> np.ndarray:
        bad = self.first_invalid(text)
        if bad is not None:
            raise InvalidArgumentError(
                f"symbol {text[bad]!r} at offset {bad} is not in alphabet '{self.symbols}'"
            )
        raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
        return self._lookup[raw]

    def decode(self, seq: np.ndarray) -> str:
        return "".join(self.symbols[i] for i in np.asarray(seq))

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and other.symbols == self.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet('{self.symbols}')"


DNA = Alphabet("ACGT")


# ── Mutation models and placements ──────────────────────────────────────


@dataclass(frozen=True)
class ThetaModel:
    """Each motif character mutates independently with probability alpha."""

    name: str = field(default="theta", init=False)


@dataclass(frozen=True)
class PsiModel:
    """Exactly min(kappa, |G|) motif characters mutate."""

    kappa: int = 2
    name: str = field(default="psi", init=False)

    def __post_init__(self):
        if self.kappa < 0:
            raise InvalidArgumentError(f"kappa={self.kappa} must be non-negative")


THETA = ThetaModel()


@dataclass(frozen=True)
class UniformPlacement:
    name: str = field(default="uniform", init=False)


@dataclass(frozen=True)
class FixedPlacement:
    position: int
    name: str = field(default="fixed", init=False)


UNIFORM = UniformPlacement()

MutationModel = ThetaModel | PsiModel
Placement = UniformPlacement | FixedPlacement


def parse_model(text: str, kappa: int = 2) -> MutationModel:
    key = text.strip().lower()
    if key == "theta":
        return THETA
    if key == "psi":
        return PsiModel(kappa)
    raise InvalidArgumentError(f"unknown mutation model '{text}'")


@dataclass(frozen=True)
class PlantedSequence:
    seq: np.ndarray
    lb: int
    rb: int
    mutated: frozenset[int] = frozenset()

    def __post_init__(self):
        if not 1 <= self.lb <= self.rb <= len(self.seq):
            raise InvalidInstanceError(
                f"motif region [{self.lb}, {self.rb}] outside sequence of length {len(self.seq)}"
            )
        width = self.rb - self.lb + 1
        if any(not 1 <= i <= width for i in self.mutated):
            raise InvalidInstanceError("mutated position outside the motif region")

    @property
    def motif_region(self) -> np.ndarray:
        return self.seq[self.lb - 1 : self.rb]

    def __len__(self) -> int:
        return len(self.seq)


# ── Generation ──────────────────────────────────────────────────────────


def random_motif(rng: np.random.Generator, m: int, alphabet: Alphabet = DNA) -> np.ndarray:
    if m < 1:
        raise InvalidArgumentError(f"motif length {m} must be positive")
    return rng.integers(0, alphabet.size, size=m, dtype=np.uint8)


def _replace_uniform(rng: np.random.Generator, original: np.ndarray, t: int) -> np.ndarray:
    # Uniform over the t-1 symbols different from the original.
    draw = rng.integers(0, t - 1, size=len(original), dtype=np.int64)
    return (draw + (draw >= original)).astype(np.uint8)


def generate_planted(
    rng: np.random.Generator,
    n: int,
    motif: np.ndarray,
    alpha: float,
    model: MutationModel = THETA,
    placement: Placement = UNIFORM,
    alphabet: Alphabet = DNA,
    replacement: ReplacementFn | None = None,
) -> PlantedSequence:
    """Plant one (possibly mutated) copy of ``motif`` in a uniform background.

    The generated sequence always has length exactly ``n``.  Draw order is
    background, start position, mutated positions, replacement symbols.
    """
    motif = np.asarray(motif, dtype=np.uint8)
    m = len(motif)
    t = alphabet.size
    if m == 0:
        raise InvalidInstanceError("motif must be non-empty")
    if m > n:
        raise InvalidInstanceError(f"motif length {m} exceeds sequence length {n}")
    if not 0.0 <= alpha < 1.0:
        raise InvalidArgumentError(f"alpha={alpha} outside [0, 1)")
    if motif.max() >= t:
        raise InvalidArgumentError("motif uses symbols outside the alphabet")

    seq = rng.integers(0, t, size=n, dtype=np.uint8)

    if isinstance(placement, FixedPlacement):
        start = placement.position
        if not 1 <= start <= n - m + 1:
            raise InvalidInstanceError(
                f"fixed position {start} outside [1, {n - m + 1}]"
            )
    else:
        start = int(rng.integers(1, n - m + 2))

    if isinstance(model, PsiModel):
        count = min(model.kappa, m)
        positions = np.sort(rng.choice(m, size=count, replace=False))
    else:
        positions = np.flatnonzero(rng.random(m) < alpha)

    planted = motif.copy()
    if len(positions):
        if replacement is None:
            planted[positions] = _replace_uniform(rng, motif[positions], t)
        else:
            for p in positions:
                symbol = int(replacement(rng, int(p) + 1, int(motif[p])))
                if symbol == motif[p] or not 0 <= symbol < t:
                    raise InvalidArgumentError(
                        f"replacement for motif position {p + 1} must be a different symbol"
                    )
                planted[p] = symbol

    seq[start - 1 : start - 1 + m] = planted
    return PlantedSequence(
        seq=seq,
        lb=start,
        rb=start + m - 1,
        mutated=frozenset(int(p) + 1 for p in positions),
    )


def generate_dataset(
    streams: RandomStreams,
    k: int,
    n: int,
    motif: np.ndarray,
    alpha: float,
    model: MutationModel = THETA,
    placement: Placement = UNIFORM,
    alphabet: Alphabet = DNA,
) -> list[PlantedSequence]:
    """k planted sequences, one independent stream per sequence index."""
    return [
        generate_planted(
            streams.stream(PHASE_GENERATE, i), n, motif, alpha, model, placement, alphabet
        )
        for i in range(k)
    ]


def generate_instance(
    streams: RandomStreams,
    k: int,
    n: int,
    motif_len: int,
    alpha: float,
    model: MutationModel = THETA,
    alphabet: Alphabet = DNA,
) -> tuple[np.ndarray, list[PlantedSequence]]:
    """Random motif plus a k-sequence dataset built around it."""
    motif = random_motif(streams.stream(PHASE_MOTIF), motif_len, alphabet)
    return motif, generate_dataset(streams, k, n, motif, alpha, model, UNIFORM, alphabet)


# ── Distances ───────────────────────────────────────────────────────────


def as_symbols(value: "np.ndarray | str | Sequence[int]") -> np.ndarray:
    """Strings compare byte-wise; arrays and lists pass through."""
    if isinstance(value, str):
        return np.frombuffer(value.encode("utf-8"), dtype=np.uint8)
    return np.asarray(value)


def rel_hamming(s1, s2) -> float:
    a, b = as_symbols(s1), as_symbols(s2)
    if len(a) != len(b):
        raise InvalidArgumentError(
            f"rel_hamming needs equal lengths, got {len(a)} and {len(b)}"
        )
    if len(a) == 0:
        raise InvalidArgumentError("rel_hamming is undefined for empty strings")
    return float(np.count_nonzero(a != b)) / len(a)


def shift_distance(i1: int, j1: int, i2: int, j2: int) -> int:
    if i1 > j1 or i2 > j2:
        raise InvalidArgumentError(f"malformed intervals [{i1},{j1}] and [{i2},{j2}]")
    return min(abs(i1 - i2), abs(j1 - j2))
