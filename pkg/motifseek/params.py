"""Derived-parameter ledger and algorithm-type thresholds.

Every "log n" in window sizes, sample counts and thresholds is log base 2.
Validation is advisory: violated inequalities are reported by name and the
ledger is still returned, flagged as outside the guarantee regime.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

from motifseek.errors import InvalidConfigurationError

DEFAULT_X = 10
DEFAULT_V = 10
DEFAULT_U1 = 4
DEFAULT_D0 = 2.0
DEFAULT_GAMMA = 0.0
DEFAULT_TAU = 1.0
# Base of delta_c inside M1(L).
M1_BASE = 0.25

_REL_TOL = 1e-12

# Free ledger fields a caller may pin.
FREE_FIELDS = (
    "epsilon",
    "alpha",
    "rho0",
    "rho1",
    "rho2",
    "v",
    "u1",
    "u2",
    "alpha0",
    "d0",
    "d1",
    "gamma",
    "tau",
    "window_override",
)
# Closed-form fields; accepted as overrides only when consistent.
DERIVED_FIELDS = ("c", "beta", "R", "Q0", "delta_c")
_INT_FIELDS = ("v", "u1", "u2", "window_override")


class AlgorithmType(str, Enum):
    RANDOMIZED_SUBLINEAR = "sublinear"
    RANDOMIZED_SUBQUADRATIC = "subquadratic"
    DETERMINISTIC_SUPERQUADRATIC = "deterministic"

    @classmethod
    def parse(cls, value: "str | AlgorithmType") -> "AlgorithmType":
        if isinstance(value, AlgorithmType):
            return value
        text = str(value).strip().lower().replace("-", "_")
        for member in cls:
            if text in (member.value, member.name.lower()):
                return member
        raise InvalidConfigurationError(f"unknown algorithm type '{value}'")


@dataclass(frozen=True)
class DerivedParams:
    t: int
    x: int
    n: int
    epsilon: float
    c: float
    rho0: float
    rho1: float
    rho2: float
    v: int
    u1: int
    u2: int
    alpha0: float
    alpha: float
    beta: float
    R: float
    Q0: float
    d0: float
    d1: float
    delta_c: float
    gamma: float
    tau: float
    window_override: int | None = None
    violations: tuple[str, ...] = field(default=())

    # ── Ledger functions ────────────────────────────────────────────────

    @property
    def log_n(self) -> float:
        return math.log2(self.n)

    @property
    def window(self) -> int:
        """Resolved window length w used by every matching step."""
        if self.window_override is not None:
            return self.window_override
        return max(4, math.ceil(self.d0 * self.log_n))

    @property
    def sigma0(self) -> float:
        return 1.0 / 2**self.x

    @property
    def phi_v(self) -> float:
        return phi(self.v, self.u1, self.c)

    @property
    def guarantee_regime(self) -> bool:
        return not self.violations

    def r(self, y: float) -> float:
        return r_func(y, self.t, self.c)

    def q(self, y: float) -> float:
        return q_func(y, self.v, self.alpha, self.c)

    def M(self, L: float) -> float:
        """Samples drawn per block of size L."""
        return (
            math.sqrt(3 * self.log_n + self.x)
            / math.sqrt(1 - self.gamma)
            * math.sqrt(L)
            * self.log_n
        )

    def M1(self, L: float) -> float:
        return delta_of(M1_BASE) * self.M(L) / self.log_n

    @property
    def sampling_threshold(self) -> float:
        """Block sizes below (log n)^(3+tau)/100 are selected exhaustively."""
        return self.log_n ** (3 + self.tau) / 100

    def as_overrides(self) -> dict:
        data = asdict(self)
        return {key: data[key] for key in FREE_FIELDS}

    def summary(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "window": self.window,
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "beta": self.beta,
            "v": self.v,
            "u1": self.u1,
            "u2": self.u2,
            "guarantee_regime": self.guarantee_regime,
            "violations": list(self.violations),
        }


# ── Closed forms ────────────────────────────────────────────────────────


def c_of(epsilon: float) -> float:
    return math.exp(-(epsilon**2) / 3)


def delta_of(c: float) -> float:
    return math.log(1 / c) / 2


def r_func(y: float, t: int, c: float) -> float:
    return 1 / (t - 1) + c**y / (1 - c)


def q_func(y: float, v: int, alpha: float, c: float) -> float:
    return 2 * (v - 1) * alpha + 2 * c**y / (1 - c)


def phi(v: int, u1: int, c: float) -> float:
    return 2 * (v + u1) * c**v / (1 - c)


def _bound_term(v: int, u1: int, c: float) -> float:
    return (v + u1) * c**v / (1 - c)


def _epsilon_cap(t: int, x: int, rho0: float) -> float:
    """Largest epsilon allowed by the epsilon-set inequality (exclusive)."""
    return min(
        ((t - 1) / t - 2 * rho0) / 3,
        (1 - 2 / (t - 1) - 4 / 2**x) / 5,
        1 / 3,
    )


def _rho1_slack(t: int, x: int, epsilon: float) -> float:
    return 1 - 2 / (t - 1) - 4 / 2**x - 5 * epsilon


def _sup_u1_term(u1: int, c: float) -> float:
    # max over y >= u1 of y * c^y; y * c^y peaks at y = 1/ln(1/c).
    peak = 1 / math.log(1 / c)
    y = u1 if u1 >= peak else peak
    return y * c**y


# ── Validation ──────────────────────────────────────────────────────────


def check_inequalities(p: DerivedParams) -> list[str]:
    """Evaluate every numbered inequality; return the names that fail."""
    t, x, c, eps = p.t, p.x, p.c, p.epsilon
    v, u1, u2 = p.v, p.u1, p.u2
    inv = 1 / (5 * 2**x)
    geo = c**v / (1 - c)
    K = _bound_term(v, u1, c)
    a0_mix = 4 * (v - 1) * p.alpha0 + p.alpha0
    base = 2 / (t - 1) + 4 / 2**x + 5 * eps

    checks = [
        ("alpha-init", p.rho0 < (t - 1) / (2 * t)),
        (
            "epsilon-set",
            eps
            < min(
                (t - 1) / t - (2 * p.rho0 + 2 * eps),
                (1 - 2 / (t - 1) - 4 / 2**x) / 5,
                1 / 3,
            ),
        ),
        ("v-set", 2 * _sup_u1_term(u1, c) / (1 - c) ** 2 <= inv),
        ("rho1", base + p.rho1 < 1),
        ("rho2", 6 * K + p.rho2 < p.rho1),
        ("v2", 1 / 2**x + K + geo + inv <= 0.5),
        ("rho2-alpha0", a0_mix < p.rho2),
        ("alpha0-rho0", p.alpha0 < p.rho0),
        ("median", base + 6 * K + a0_mix < 1),
        (
            "v-alpha0",
            2
            * (
                (2 * (v - 1) * p.alpha0 + geo)
                + p.r(v)
                + 2 * (p.sigma0 + p.phi_v)
                + 2 * eps
            )
            + (p.alpha0 + eps)
            < 1,
        ),
        (
            "v-set-q",
            2 * (p.q(v) + p.r(v) + 2 * (p.sigma0 + p.phi_v) + 2 * eps)
            + (p.alpha0 + eps)
            < 1,
        ),
        ("support-q0", 1 / 2**x + K + geo + inv + p.q(v) <= 0.75),
        ("alpha-range", p.alpha <= p.alpha0),
        ("d0-sel", _d_sel_value(p.n**3, c, p.d0, p.log_n) < inv),
        ("d1-sel", _d_sel_value(v + u1, c, p.d1, p.log_n) < inv),
        ("u2-log", p.d1 * p.log_n * (v + u1) * c ** (v + u2) / (1 - c) <= inv),
        ("u2-const", (v + u1) * c ** (v + u2) / (1 - c) < inv),
    ]
    return [name for name, ok in checks if not ok]


def _d_sel_value(factor: float, c: float, d: float, log_n: float) -> float:
    # factor * c^(d log n), evaluated in log space to avoid overflow.
    exponent = math.log(factor) + d * log_n * math.log(c)
    return math.exp(exponent) if exponent < 700 else math.inf


def _as_int(key: str, value) -> int:
    if isinstance(value, bool):
        raise InvalidConfigurationError(f"{key} must be an integer")
    if isinstance(value, float):
        if not value.is_integer():
            raise InvalidConfigurationError(f"{key} must be an integer, got {value}")
        return int(value)
    return int(value)


def _check_range(name: str, value: float, lo: float, hi: float, lo_open=True, hi_open=True):
    below = value <= lo if lo_open else value < lo
    above = value >= hi if hi_open else value > hi
    if below or above:
        left = "(" if lo_open else "["
        right = ")" if hi_open else "]"
        raise InvalidConfigurationError(
            f"{name}={value} outside {left}{lo}, {hi}{right}"
        )


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=_REL_TOL, abs_tol=0.0) or a == b


# ── Derivation ──────────────────────────────────────────────────────────


def derive_and_validate_params(
    t: int,
    x: int = DEFAULT_X,
    overrides: dict | None = None,
    n: int = 1024,
) -> tuple[DerivedParams, list[str]]:
    """Build the full ledger, filling unpinned fields in construction order.

    Returns the ledger and the names of violated inequalities (also stored
    on the ledger).
    """
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    unknown = set(overrides) - set(FREE_FIELDS) - set(DERIVED_FIELDS)
    if unknown:
        raise InvalidConfigurationError(
            f"unknown ledger field(s): {', '.join(sorted(unknown))}"
        )
    for key in _INT_FIELDS:
        if key in overrides:
            overrides[key] = _as_int(key, overrides[key])

    if t < 2:
        raise InvalidConfigurationError(f"alphabet size t={t} must be at least 2")
    if x < 1:
        raise InvalidConfigurationError(f"x={x} must be at least 1")
    if n < 4:
        raise InvalidConfigurationError(f"sequence length n={n} must be at least 4")

    alpha = float(overrides.get("alpha", 0.0))
    _check_range("alpha", alpha, 0.0, 1.0, lo_open=False)

    rho0 = float(overrides.get("rho0", (t - 1) / (4 * t)))
    _check_range("rho0", rho0, 0.0, 1.0)

    if "epsilon" in overrides:
        epsilon = float(overrides["epsilon"])
    else:
        cap = _epsilon_cap(t, x, rho0)
        epsilon = cap / 2 if cap > 0 else 0.05
    _check_range("epsilon", epsilon, 0.0, 1.0)
    c = c_of(epsilon)

    if "rho1" in overrides:
        rho1 = float(overrides["rho1"])
    else:
        slack = _rho1_slack(t, x, epsilon)
        rho1 = slack / 2 if slack > 0 else 0.01
    _check_range("rho1", rho1, 0.0, 1.0)
    rho2 = float(overrides.get("rho2", rho1 / 2))
    _check_range("rho2", rho2, 0.0, 1.0)

    v = overrides.get("v", DEFAULT_V)
    u1 = overrides.get("u1", DEFAULT_U1)
    log_n = math.log2(n)
    u2 = overrides.get("u2", max(0, math.ceil(math.log2(log_n))))
    if v < 1:
        raise InvalidConfigurationError(f"v={v} must be a positive integer")
    if u1 < 1:
        raise InvalidConfigurationError(f"u1={u1} must be a positive integer")
    if u2 < 0:
        raise InvalidConfigurationError(f"u2={u2} must be non-negative")

    if "alpha0" in overrides:
        alpha0 = float(overrides["alpha0"])
    else:
        alpha0 = min(rho2 / (4 * (v - 1) + 1), rho0) / 2
    if alpha0 <= 0:
        raise InvalidConfigurationError(f"alpha0={alpha0} must be positive")

    d0 = float(overrides.get("d0", DEFAULT_D0))
    d1 = float(overrides.get("d1", d0))
    if d0 <= 0 or d1 <= 0:
        raise InvalidConfigurationError("d0 and d1 must be positive")
    gamma = float(overrides.get("gamma", DEFAULT_GAMMA))
    _check_range("gamma", gamma, 0.0, 1.0, lo_open=False)
    tau = float(overrides.get("tau", DEFAULT_TAU))
    if tau <= 0:
        raise InvalidConfigurationError(f"tau={tau} must be positive")
    window_override = overrides.get("window_override")
    if window_override is not None and window_override < 4:
        raise InvalidConfigurationError(
            f"window_override={window_override} must be at least 4"
        )

    beta = 2 * alpha + 2 * epsilon
    R = r_func(v, t, c)
    Q0 = q_func(v, v, alpha, c)
    delta_c = delta_of(c)

    for key, value in (("c", c), ("beta", beta), ("R", R), ("Q0", Q0), ("delta_c", delta_c)):
        if key in overrides and not _close(float(overrides[key]), value):
            raise InvalidConfigurationError(
                f"{key}={overrides[key]} disagrees with its closed form {value}"
            )

    params = DerivedParams(
        t=t,
        x=x,
        n=n,
        epsilon=epsilon,
        c=c,
        rho0=rho0,
        rho1=rho1,
        rho2=rho2,
        v=v,
        u1=u1,
        u2=u2,
        alpha0=alpha0,
        alpha=alpha,
        beta=beta,
        R=R,
        Q0=Q0,
        d0=d0,
        d1=d1,
        delta_c=delta_c,
        gamma=gamma,
        tau=tau,
        window_override=window_override,
    )
    violations = check_inequalities(params)
    params = DerivedParams(**{**asdict(params), "violations": tuple(violations)})
    return params, violations


def feasible_overrides(t: int, x: int = DEFAULT_X, n: int = 1024) -> dict:
    """Constructive assignment satisfying every inequality.

    Order: rho0 -> epsilon -> rho1 -> u1 -> (v, rho2) -> alpha0 -> d0, d1 -> u2.
    The resulting constants are astronomically large at desk scale; they
    exist to show the guarantee regime is reachable.
    """
    if t < 4:
        raise InvalidConfigurationError("a feasible ledger needs t >= 4")
    rho0 = (t - 1) / (4 * t)
    epsilon = _epsilon_cap(t, x, rho0) / 2
    c = c_of(epsilon)
    rho1 = _rho1_slack(t, x, epsilon) / 2
    rho2 = rho1 / 2
    inv = 1 / (5 * 2**x)

    peak = math.ceil(1 / math.log(1 / c))
    u1 = _least_int(lambda u: 2 * u * c**u / (1 - c) ** 2 <= inv, start=peak)
    # Keeps every K-dependent inequality slack: K <= rho2 / 24.
    v = _least_int(lambda vv: _bound_term(vv, u1, c) <= rho2 / 24, start=1)
    alpha0 = min(rho2 / (4 * (v - 1) + 1), rho0) / 2

    log_n = math.log2(n)
    ln_inv_c = math.log(1 / c)
    d0 = 1.01 * (3 * math.log(n) + math.log(5 * 2**x)) / (log_n * ln_inv_c)
    d1 = 1.01 * (math.log(v + u1) + math.log(5 * 2**x)) / (log_n * ln_inv_c)
    u2 = _least_int(
        lambda uu: d1 * log_n * (v + u1) * c ** (v + uu) / (1 - c) <= inv / 2,
        start=0,
    )
    return {
        "epsilon": epsilon,
        "alpha": 0.0,
        "rho0": rho0,
        "rho1": rho1,
        "rho2": rho2,
        "v": v,
        "u1": u1,
        "u2": u2,
        "alpha0": alpha0,
        "d0": d0,
        "d1": d1,
    }


def _least_int(predicate, start: int = 0) -> int:
    """Least integer >= start satisfying a predicate that stays true once true."""
    if predicate(start):
        return start
    lo, step = start, 1
    hi = start + step
    while not predicate(hi):
        lo = hi
        step *= 2
        hi = start + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def omega_for(algorithm_type: "AlgorithmType | str", params: DerivedParams) -> float:
    """Collision threshold for an algorithm type."""
    algo = AlgorithmType.parse(algorithm_type)
    if algo is AlgorithmType.RANDOMIZED_SUBLINEAR:
        return 0.0
    return params.beta
