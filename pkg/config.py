from dataclasses import dataclass, fields
import io
import os

from dotenv import load_dotenv
from dotenv.parser import parse_stream

from motifseek.errors import InvalidArgumentError, InvalidConfigurationError
from motifseek.genmodel import Alphabet
from motifseek.params import AlgorithmType


@dataclass
class MotifConfig:
    # Ledger inputs
    t: int | None = None  # defaults to the alphabet size
    x: int = 10
    epsilon: float | None = None
    alpha: float | None = None
    v: int | None = None
    u1: int | None = None
    u2: int | None = None
    d0: float | None = None
    d1: float | None = None
    gamma: float | None = None
    tau: float | None = None
    window_override: int | None = None

    # Ledger pins that are normally derived
    rho0: float | None = None
    rho1: float | None = None
    rho2: float | None = None
    alpha0: float | None = None

    algorithm_type: AlgorithmType = AlgorithmType.RANDOMIZED_SUBLINEAR
    seed: int = 0

    alphabet: str = "ACGT"
    kappa: int = 2  # Psi-model constant

    # Restart loop
    refine_rounds: int = 0
    restarts: int = 1

    # Event logging
    enable_event_log: bool = False
    event_log_path: str = "~/.motifseek/events.jsonl"

    def ledger_overrides(self) -> dict:
        """Only the ledger fields the user pinned."""
        keys = (
            "epsilon", "alpha", "v", "u1", "u2", "d0", "d1", "gamma", "tau",
            "window_override", "rho0", "rho1", "rho2", "alpha0",
        )
        return {key: getattr(self, key) for key in keys if getattr(self, key) is not None}

    def resolve_alphabet(self) -> Alphabet:
        try:
            alphabet = Alphabet(self.alphabet)
        except InvalidArgumentError as e:
            raise InvalidConfigurationError(str(e)) from None
        if self.t is not None and self.t != alphabet.size:
            raise InvalidConfigurationError(
                f"t={self.t} disagrees with alphabet '{alphabet.symbols}' of size {alphabet.size}"
            )
        return alphabet


_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")


def _convert(name: str, raw: str, line: int | None):
    kind = {f.name: f.type for f in fields(MotifConfig)}[name]
    text = raw.strip()
    try:
        if name == "algorithm_type":
            return AlgorithmType.parse(text)
        if kind in ("bool", bool):
            if text.lower() in _TRUE:
                return True
            if text.lower() in _FALSE:
                return False
            raise ValueError(text)
        if "int" in str(kind):
            return int(text)
        if "float" in str(kind):
            return float(text)
        return text
    except InvalidConfigurationError as e:
        raise InvalidConfigurationError(str(e), line=line) from None
    except ValueError:
        raise InvalidConfigurationError(
            f"invalid value '{raw}' for {name}", line=line
        ) from None


def parse_config_text(text: str) -> dict:
    """Parse `key = value` lines into typed field values."""
    known = {f.name for f in fields(MotifConfig)}
    values: dict = {}
    for binding in parse_stream(io.StringIO(text)):
        original = binding.original
        # Bindings swallow the blank lines in front of them.
        leading = original.string[: len(original.string) - len(original.string.lstrip())]
        line = original.line + leading.count("\n")
        if binding.error:
            raise InvalidConfigurationError(
                f"cannot parse '{original.string.strip()}'", line=line
            )
        if binding.key is None:
            continue
        if binding.key not in known:
            raise InvalidConfigurationError(f"unknown key '{binding.key}'", line=line)
        if binding.value is None:
            raise InvalidConfigurationError(f"missing value for {binding.key}", line=line)
        values[binding.key] = _convert(binding.key, binding.value, line)
    return values


def load_config(path: str | None = None) -> MotifConfig:
    load_dotenv()
    path = path or os.environ.get("MOTIFSEEK_CONFIG")
    values: dict = {}
    if path:
        try:
            with open(os.path.expanduser(path)) as f:
                values = parse_config_text(f.read())
        except OSError as e:
            raise InvalidConfigurationError(f"cannot read config file {path}: {e}") from e

    seed = os.environ.get("MOTIFSEEK_SEED")
    if seed:
        values["seed"] = _convert("seed", seed, None)
    event_log = os.environ.get("MOTIFSEEK_EVENT_LOG")
    if event_log:
        values["enable_event_log"] = True
        values["event_log_path"] = event_log

    config = MotifConfig(**values)
    validate_config(config)
    return config


def validate_config(config: MotifConfig) -> None:
    if config.seed < 0:
        raise InvalidConfigurationError("seed must be non-negative")
    if config.restarts < 1:
        raise InvalidConfigurationError("restarts must be at least 1")
    if config.refine_rounds < 0:
        raise InvalidConfigurationError("refine_rounds must be non-negative")
