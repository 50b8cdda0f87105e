"""Coherent-state primitives: overlaps and truncated Fock expansions.

Everything here works with real amplitudes only.  Two real coherent states
|a1> and |a2> overlap by exp(-(a1-a2)^2/2), which is strictly inside (0, 1)
whenever the amplitudes differ, so a pair of distinct states always forms a
linearly independent (but nonorthogonal) qubit basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TruncationError

MAX_AMPLITUDE = 8.0
DEFAULT_DISTINCT_TOL = 1e-9

# Construction rejects a truncation whose discarded tail mass reaches this.
TAIL_MASS_LIMIT = 1e-10


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be a finite real, got {value!r}")
    return value


def overlap(a1: float, a2: float) -> float:
    """Inner product <a1|a2> of two real coherent states: exp(-(a1-a2)^2/2)."""
    a1 = _require_finite("a1", a1)
    a2 = _require_finite("a2", a2)
    return math.exp(-0.5 * (a1 - a2) ** 2)


def overlap_complement(a1: float, a2: float) -> float:
    """1 - <a1|a2>^2, computed without cancellation for nearby amplitudes."""
    a1 = _require_finite("a1", a1)
    a2 = _require_finite("a2", a2)
    return -math.expm1(-((a1 - a2) ** 2))


def default_truncation(max_amp: float) -> int:
    """Fock cutoff guaranteeing tail mass < 1e-12 for amplitudes up to max_amp."""
    max_amp = _require_finite("max_amp", max_amp)
    if max_amp < 0:
        raise DomainError(f"max_amp must be >= 0, got {max_amp}")
    return int(math.ceil(max_amp**2 + 10.0 * max_amp + 20.0))


@dataclass(frozen=True)
class CoherentConfig:
    """Four real amplitudes (alpha, beta, gamma, delta) of the product basis.

    |alpha>, |gamma> span system 1 and |beta>, |delta> span system 2; each
    pair must be distinct so the spans are two-dimensional.  Below the
    distinctness tolerance the basis change becomes numerically singular
    (sqrt(1 - p^2) underflows), so near-equal pairs are rejected outright.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    distinct_tol: float = DEFAULT_DISTINCT_TOL

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            value = _require_finite(name, getattr(self, name))
            object.__setattr__(self, name, value)
            if abs(value) > MAX_AMPLITUDE:
                raise DomainError(
                    f"|{name}| = {abs(value)} exceeds the supported bound {MAX_AMPLITUDE}"
                )
        if not 0 < self.distinct_tol < 1:
            raise DomainError(f"distinct_tol must lie in (0, 1), got {self.distinct_tol}")
        if abs(self.alpha - self.gamma) <= self.distinct_tol:
            raise DomainError(
                f"alpha and gamma must differ by more than {self.distinct_tol} "
                f"(got {self.alpha} and {self.gamma})"
            )
        if abs(self.beta - self.delta) <= self.distinct_tol:
            raise DomainError(
                f"beta and delta must differ by more than {self.distinct_tol} "
                f"(got {self.beta} and {self.delta})"
            )

    @property
    def max_amplitude(self) -> float:
        return max(abs(self.alpha), abs(self.beta), abs(self.gamma), abs(self.delta))


@dataclass(frozen=True)
class OverlapPair:
    """The two basis overlaps p1 = <alpha|gamma> and p2 = <delta|beta>.

    ``c1`` and ``c2`` hold 1 - p^2; when built from a CoherentConfig they are
    computed via expm1 so sqrt(1 - p^2) stays accurate even for p very close
    to 1.
    """

    p1: float
    p2: float
    c1: float = field(default=None, repr=False)  # type: ignore[assignment]
    c2: float = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("p1", "p2"):
            value = _require_finite(name, getattr(self, name))
            object.__setattr__(self, name, value)
            if not 0.0 < value < 1.0:
                raise DomainError(f"{name} must lie strictly inside (0, 1), got {value}")
        if self.c1 is None:
            object.__setattr__(self, "c1", (1.0 - self.p1) * (1.0 + self.p1))
        if self.c2 is None:
            object.__setattr__(self, "c2", (1.0 - self.p2) * (1.0 + self.p2))

    @classmethod
    def from_config(cls, config: CoherentConfig) -> "OverlapPair":
        return cls(
            p1=overlap(config.alpha, config.gamma),
            p2=overlap(config.delta, config.beta),
            c1=overlap_complement(config.alpha, config.gamma),
            c2=overlap_complement(config.delta, config.beta),
        )

    @property
    def n1(self) -> float:
        """Normalizer sqrt(1 - p1^2) of the orthogonalized system-1 basis."""
        return math.sqrt(self.c1)

    @property
    def n2(self) -> float:
        """Normalizer sqrt(1 - p2^2) of the orthogonalized system-2 basis."""
        return math.sqrt(self.c2)

    def common_value(self, tol: float = 1e-12) -> float:
        """The shared overlap x when p1 = p2; DomainError if they differ."""
        if abs(self.p1 - self.p2) > tol:
            raise DomainError(f"p1 = {self.p1} and p2 = {self.p2} differ beyond {tol}")
        return self.p1


@dataclass(frozen=True, eq=False)
class FockVector:
    """Unit-norm number-state expansion of a coherent state, cut at `truncation`."""

    coefficients: np.ndarray
    truncation: int


def fock_vector(a: float, truncation: int) -> FockVector:
    """Number-state coefficients e^(-a^2/2) a^n / sqrt(n!) for n < truncation.

    Coefficients are built by the recurrence c_{n+1} = c_n * a / sqrt(n+1),
    which stays stable for cutoffs in the hundreds, then renormalized.
    Raises TruncationError when the discarded tail mass is not negligible.
    """
    a = _require_finite("a", a)
    if abs(a) > MAX_AMPLITUDE:
        raise DomainError(f"|a| = {abs(a)} exceeds the supported bound {MAX_AMPLITUDE}")
    truncation = int(truncation)
    if truncation < 1:
        raise DomainError(f"truncation must be >= 1, got {truncation}")

    coeffs = np.empty(truncation)
    coeffs[0] = math.exp(-0.5 * a * a)
    for n in range(truncation - 1):
        coeffs[n + 1] = coeffs[n] * a / math.sqrt(n + 1.0)

    captured = float(np.dot(coeffs, coeffs))
    tail = max(0.0, 1.0 - captured)
    if tail >= TAIL_MASS_LIMIT:
        raise TruncationError(
            f"truncation {truncation} keeps only {captured:.12f} of the norm for "
            f"amplitude {a} (tail mass {tail:.3e}); need at least "
            f"{default_truncation(abs(a))}",
            tail_mass=tail,
        )
    coeffs /= math.sqrt(captured)
    return FockVector(coefficients=coeffs, truncation=truncation)
