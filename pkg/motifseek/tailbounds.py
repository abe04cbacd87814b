"""Chernoff-style tail bounds and their Monte Carlo counterparts."""

import math

import numpy as np


def chernoff_upper_tail(n: int, eps: float) -> float:
    """Bound on Pr(X > pn + eps*n) for a sum of n independent 0/1 variables."""
    return math.exp(-n * eps**2 / 3)


def window_match_bound(eps: float, w: int) -> float:
    """Bound on the chance two independent random windows are within beta."""
    return math.exp(-(eps**2) * w / 3)


def empirical_upper_tail(
    rng: np.random.Generator, n: int, p: float, eps: float, samples: int
) -> float:
    draws = rng.binomial(n, p, size=samples)
    return float(np.mean(draws > p * n + eps * n))


def random_window_match_rate(
    rng: np.random.Generator, t: int, w: int, beta: float, samples: int
) -> float:
    """Fraction of independent uniform window pairs with rel_hamming <= beta."""
    x1 = rng.integers(0, t, size=(samples, w))
    x2 = rng.integers(0, t, size=(samples, w))
    distance = (x1 != x2).sum(axis=1) / w
    return float(np.mean(distance <= beta + 1e-12))
