"""Plain-text input documents: one `key = value` assignment per line.

Two document kinds share the format: a state spec (coefficients plus either
four amplitudes or two overlaps) and a scan config (grid ranges).  Floats are
serialized with repr, so a dumped document re-parses to bit-identical values.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .coherent import CoherentConfig, OverlapPair
from .analytic import SuperpositionCoeffs
from .errors import DomainError, InputFileError
from .scan import ScanConfig

_STATE_KEYS = {
    "alpha", "beta", "gamma", "delta", "p1", "p2",
    "mu", "lambda", "rho", "nu", "truncation",
}

_SCAN_KEYS = {
    "lambda_min", "lambda_max", "lambda_steps",
    "rho_min", "rho_max", "rho_steps",
    "nu_min", "nu_max", "nu_steps",
    "x_values", "threshold", "seed", "oracle_fraction",
}


def _parse_assignments(text: str, allowed: set[str]) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputFileError(f"line {lineno}: expected `key = value`, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in allowed:
            raise InputFileError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise InputFileError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise InputFileError(f"line {lineno}: empty value for {key!r}")
        values[key] = value
    return values


def _as_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise InputFileError(f"key {key!r}: {value!r} is not a number") from None


def _as_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise InputFileError(f"key {key!r}: {value!r} is not an integer") from None


@dataclass(frozen=True)
class StateSpec:
    """One input state: coefficients plus amplitudes or overlaps."""

    lam: float
    rho: float
    nu: float
    mu: float = 1.0
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    delta: float | None = None
    p1: float | None = None
    p2: float | None = None
    truncation: int | None = None

    def __post_init__(self):
        amps = (self.alpha, self.beta, self.gamma, self.delta)
        n_amps = sum(a is not None for a in amps)
        if n_amps not in (0, 4):
            raise DomainError(
                "amplitudes must be given all together (alpha, beta, gamma, delta)"
            )
        n_overlaps = sum(p is not None for p in (self.p1, self.p2))
        if n_overlaps == 1:
            raise DomainError("overlaps must be given together (p1 and p2)")
        if (n_amps == 4) == (n_overlaps == 2):
            raise DomainError(
                "exactly one of {alpha,beta,gamma,delta} or {p1,p2} must be present"
            )

    @property
    def has_amplitudes(self) -> bool:
        return self.alpha is not None

    def coefficients(self) -> SuperpositionCoeffs:
        return SuperpositionCoeffs(self.mu, self.lam, self.rho, self.nu)

    def config(self) -> CoherentConfig:
        if not self.has_amplitudes:
            raise DomainError("this spec carries overlaps, not amplitudes")
        return CoherentConfig(self.alpha, self.beta, self.gamma, self.delta)

    def overlaps(self) -> OverlapPair:
        if self.has_amplitudes:
            return OverlapPair.from_config(self.config())
        return OverlapPair(self.p1, self.p2)


def parse_state_text(text: str) -> StateSpec:
    values = _parse_assignments(text, _STATE_KEYS)
    for key in ("lambda", "rho", "nu"):
        if key not in values:
            raise InputFileError(f"missing required key {key!r}")
    kwargs = {
        "lam": _as_float("lambda", values["lambda"]),
        "rho": _as_float("rho", values["rho"]),
        "nu": _as_float("nu", values["nu"]),
        "mu": _as_float("mu", values["mu"]) if "mu" in values else 1.0,
    }
    for key in ("alpha", "beta", "gamma", "delta", "p1", "p2"):
        if key in values:
            kwargs[key] = _as_float(key, values[key])
    if "truncation" in values:
        kwargs["truncation"] = _as_int("truncation", values["truncation"])
    return StateSpec(**kwargs)


def load_state_file(path) -> StateSpec:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise InputFileError(f"cannot read {path}: {err}") from None
    return parse_state_text(text)


def dump_state_text(spec: StateSpec) -> str:
    """Serialize a StateSpec so that re-parsing reproduces it bit-for-bit."""
    lines = []
    rename = {"lam": "lambda"}
    for field in fields(StateSpec):
        value = getattr(spec, field.name)
        if value is None:
            continue
        lines.append(f"{rename.get(field.name, field.name)} = {value!r}")
    return "\n".join(lines) + "\n"


def parse_scan_text(text: str) -> ScanConfig:
    values = _parse_assignments(text, _SCAN_KEYS)

    def axis(name: str) -> tuple[float, float, int]:
        missing = [
            f"{name}_{part}" for part in ("min", "max", "steps")
            if f"{name}_{part}" not in values
        ]
        if missing:
            raise InputFileError(f"missing scan keys: {', '.join(missing)}")
        return (
            _as_float(f"{name}_min", values[f"{name}_min"]),
            _as_float(f"{name}_max", values[f"{name}_max"]),
            _as_int(f"{name}_steps", values[f"{name}_steps"]),
        )

    lam = axis("lambda")
    rho = axis("rho")
    nu = axis("nu")
    if "x_values" not in values:
        raise InputFileError("missing scan key 'x_values'")
    try:
        x_values = tuple(
            float(part) for part in values["x_values"].replace(",", " ").split()
        )
    except ValueError:
        raise InputFileError(
            f"x_values: {values['x_values']!r} is not a list of numbers"
        ) from None
    kwargs = {}
    if "threshold" in values:
        kwargs["concurrence_threshold"] = _as_float("threshold", values["threshold"])
    if "seed" in values:
        kwargs["seed"] = _as_int("seed", values["seed"])
    if "oracle_fraction" in values:
        kwargs["oracle_fraction"] = _as_float(
            "oracle_fraction", values["oracle_fraction"]
        )
    return ScanConfig(lam_range=lam, rho_range=rho, nu_range=nu,
                      x_values=x_values, **kwargs)


def load_scan_file(path) -> ScanConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise InputFileError(f"cannot read {path}: {err}") from None
    return parse_scan_text(text)
