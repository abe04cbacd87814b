"""Reproducible random streams.

One master seed fans out into independent numpy generators keyed by
(phase, index, iteration), so reruns and variants draw identical numbers
no matter in which order the phases ask for them.
"""

import zlib

import numpy as np

# Phase names used across the package; any string works, these keep the
# keys consistent.
PHASE_GENERATE = "generate"
PHASE_MOTIF = "motif"
PHASE_INITIAL = "initial"
PHASE_ANCHOR = "anchor"
PHASE_Z2 = "z2"
PHASE_ORACLE = "oracle"
PHASE_TRIAL = "trial"
PHASE_RESTART = "restart"


def _phase_key(phase: str) -> int:
    return zlib.crc32(phase.encode("utf-8"))


class RandomStreams:
    def __init__(self, seed: int = 0, path: tuple[int, ...] = ()):
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.seed = int(seed)
        self.path = tuple(path)

    def stream(
        self, phase: str, index: int = 0, iteration: int = 0
    ) -> np.random.Generator:
        """Return the generator for one (phase, index, iteration) key."""
        key = self.path + (_phase_key(phase), int(index), int(iteration))
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=key)
        )

    def child(self, phase: str, index: int) -> "RandomStreams":
        """Streams for a sub-run (one trial, one restart)."""
        return RandomStreams(self.seed, self.path + (_phase_key(phase), int(index)))

    def __repr__(self) -> str:
        return f"RandomStreams(seed={self.seed}, path={self.path})"
