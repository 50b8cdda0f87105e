"""Parameter-space scanning: locate near-maximal states and pin them down.

A grid scan sweeps (lam, rho, nu) boxes at fixed overlaps x, keeps every
point whose concurrence clears a threshold, then polishes each hit by
derivative-free coordinate descent on the maximality residual.  The polished
hits empirically confirm the classification: every one lands on exactly one
of the two maximal families, and a seeded random subsample is re-checked
against the brute-force Fock oracle.

Evaluation is chunked by (x, lam) slices; chunk boundaries depend only on the
config, so the merged output is byte-identical regardless of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .analytic import SuperpositionCoeffs, concurrence, maximality_residual
from .classify import (
    check_class_a,
    check_class_b,
    class_a_residual,
    class_b_residual,
)
from .coherent import CoherentConfig, OverlapPair
from .errors import ConsistencyError, DomainError, GridSizeError
from .oracle import oracle_concurrence

MAX_GRID_POINTS = 100_000_000

# Hits below this concurrence are kept as-is; refinement targets near-maximal
# candidates only.
REFINE_FLOOR = 0.9

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScanRecord:
    """One grid hit: coefficients, overlap, concurrence, class residuals."""

    lam: float
    rho: float
    nu: float
    x: float
    concurrence: float
    class_a_residual: float
    class_b_residual: float
    refined: bool = False
    refine_converged: bool = True

    def coefficients(self) -> SuperpositionCoeffs:
        return SuperpositionCoeffs(1.0, self.lam, self.rho, self.nu)


@dataclass(frozen=True)
class ScanConfig:
    """Grid specification: (min, max, steps) per coefficient plus the x list."""

    lam_range: tuple[float, float, int]
    rho_range: tuple[float, float, int]
    nu_range: tuple[float, float, int]
    x_values: tuple[float, ...]
    concurrence_threshold: float = 0.999
    seed: int = 0
    oracle_fraction: float = 0.01

    def __post_init__(self):
        for name in ("lam_range", "rho_range", "nu_range"):
            lo, hi, steps = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise DomainError(f"{name}: need finite min <= max, got ({lo}, {hi})")
            if steps < 1 or (steps == 1 and lo != hi):
                raise DomainError(
                    f"{name}: steps must be >= 2, or exactly 1 with min == max"
                )
        object.__setattr__(self, "x_values", tuple(float(x) for x in self.x_values))
        if not self.x_values:
            raise DomainError("x_values must not be empty")
        for x in self.x_values:
            if not 1e-6 <= x <= 1.0 - 1e-6:
                raise DomainError(
                    f"x value {x} outside [1e-6, 1 - 1e-6]; overlaps that close to "
                    "0 or 1 make the basis change numerically singular"
                )
        if not 0.0 < self.concurrence_threshold <= 1.0:
            raise DomainError(
                f"concurrence_threshold must lie in (0, 1], got "
                f"{self.concurrence_threshold}"
            )
        if not 0.0 <= self.oracle_fraction <= 1.0:
            raise DomainError(
                f"oracle_fraction must lie in [0, 1], got {self.oracle_fraction}"
            )
        total = self.total_points()
        if total > MAX_GRID_POINTS:
            raise GridSizeError(
                f"grid has {total} points, above the {MAX_GRID_POINTS} limit"
            )

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(
            np.linspace(lo, hi, steps)
            for lo, hi, steps in (self.lam_range, self.rho_range, self.nu_range)
        )

    def total_points(self) -> int:
        return (
            self.lam_range[2]
            * self.rho_range[2]
            * self.nu_range[2]
            * len(self.x_values)
        )


@dataclass(frozen=True)
class DisjointnessReport:
    """Outcome of checking that near-maximal records split into two classes."""

    passed: bool
    n_records: int
    n_maximal: int
    n_class_a: int
    n_class_b: int
    violations: tuple[tuple[ScanRecord, str], ...]
    tol: float
    maximal_tol: float

    def summary(self) -> str:
        if self.passed:
            return (
                f"classes disjoint: {self.n_maximal} near-maximal records "
                f"({self.n_class_a} class a, {self.n_class_b} class b), "
                f"0 violations"
            )
        lines = [
            f"DISJOINTNESS VIOLATED: {len(self.violations)} of {self.n_maximal} "
            f"near-maximal records failed"
        ]
        for record, reason in self.violations[:20]:
            lines.append(
                f"  {reason}: lam={record.lam!r} rho={record.rho!r} "
                f"nu={record.nu!r} x={record.x!r} C={record.concurrence!r}"
            )
        if len(self.violations) > 20:
            lines.append(f"  ... and {len(self.violations) - 20} more")
        return "\n".join(lines)


def _chunk_concurrence(lam: float, rhos: np.ndarray, nus: np.ndarray, x: float):
    """Vectorized concurrence over a (rho, nu) slab, mirroring the scalar path."""
    rho = rhos[:, None]
    nu = nus[None, :]
    n1 = math.sqrt((1.0 - x) * (1.0 + x))
    numerator = 2.0 * np.abs(nu - lam * rho) * n1 * n1
    n_sq = (
        (1.0 + lam * lam + rho * rho + nu * nu)
        + 2.0 * (lam + rho * nu) * x
        + 2.0 * (rho + lam * nu) * x
        + 2.0 * (nu + lam * rho) * x * x
    )
    c = numerator / n_sq
    if float(c.max(initial=0.0)) > 1.0 + 1e-9:
        raise ConsistencyError("grid concurrence exceeded 1 beyond rounding slack")
    return np.minimum(c, 1.0)


def _scan_slice(lam: float, rhos: np.ndarray, nus: np.ndarray, x: float,
                threshold: float) -> list[ScanRecord]:
    c = _chunk_concurrence(lam, rhos, nus, x)
    hit_rho, hit_nu = np.nonzero(c >= threshold)
    records = []
    for ir, iv in zip(hit_rho.tolist(), hit_nu.tolist()):
        rho, nu = float(rhos[ir]), float(nus[iv])
        records.append(
            ScanRecord(
                lam=lam,
                rho=rho,
                nu=nu,
                x=x,
                concurrence=float(c[ir, iv]),
                class_a_residual=abs(nu - 1.0) + abs(lam + rho + 2.0 * x),
                class_b_residual=abs(lam - rho) + abs(nu + 1.0 + 2.0 * lam * x),
            )
        )
    return records


def grid_scan(config: ScanConfig, workers: int = 1) -> list[ScanRecord]:
    """All grid points whose concurrence reaches the threshold, in grid order.

    Grid order is row-major over (x, lam, rho, nu).  Work is split into one
    task per (x, lam) slice and merged by task index, so the result does not
    depend on the worker count.
    """
    lams, rhos, nus = config.axes()
    tasks = [(float(x), float(lam)) for x in config.x_values for lam in lams]
    threshold = config.concurrence_threshold
    if workers <= 1:
        slices = [_scan_slice(lam, rhos, nus, x, threshold) for x, lam in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_scan_slice, lam, rhos, nus, x, threshold)
                for x, lam in tasks
            ]
            slices = [f.result() for f in futures]
    return [record for chunk in slices for record in chunk]


def _golden_section(f, lo: float, hi: float, atol: float = 1e-12):
    """Golden-section minimum of f on [lo, hi] to absolute x tolerance."""
    h = hi - lo
    c = hi - _INVPHI * h
    d = lo + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > atol:
        if fc < fd:
            hi, d, fd = d, c, fc
            h = hi - lo
            c = hi - _INVPHI * h
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            h = hi - lo
            d = lo + _INVPHI * h
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _line_minimum(f, t0: float, f0: float, span: float):
    """Robust 1-d minimization: coarse bracket scan, then golden section."""
    pts = np.linspace(t0 - span, t0 + span, 9)
    vals = [f(float(t)) for t in pts]
    best = int(np.argmin(vals))
    lo = float(pts[max(0, best - 1)])
    hi = float(pts[min(len(pts) - 1, best + 1)])
    t_new, f_new = _golden_section(f, lo, hi)
    if vals[best] < f_new:
        t_new, f_new = float(pts[best]), vals[best]
    if f_new < f0:
        return t_new, f_new
    return t0, f0


def refine(
    record: ScanRecord,
    span: float = 0.5,
    max_sweeps: int = 100,
    target: float = 1e-24,
) -> ScanRecord:
    """Drive a near-maximal hit onto its family by minimizing the residual.

    Coordinate descent over (lam, rho, nu) at fixed x, golden-section per
    coordinate; sweeps stop once the residual drops below `target`, stalls,
    or `max_sweeps` is reached.  The returned record never has a smaller
    concurrence than the input; a record that fails to converge is returned
    flagged rather than dropped.
    """
    if record.concurrence < REFINE_FLOOR:
        raise DomainError(
            f"refine expects a near-maximal record (C >= {REFINE_FLOOR}), "
            f"got C = {record.concurrence}"
        )
    x = record.x
    coords = [record.lam, record.rho, record.nu]

    def residual_at(vals) -> float:
        return maximality_residual(
            SuperpositionCoeffs(1.0, vals[0], vals[1], vals[2]), x
        )

    current = residual_at(coords)
    converged = current <= target
    for _ in range(max_sweeps):
        if current <= target:
            converged = True
            break
        before = current
        start = coords.copy()
        for i in range(3):
            def f(t, i=i):
                trial = coords.copy()
                trial[i] = t
                return residual_at(trial)

            coords[i], current = _line_minimum(f, coords[i], current, span)
        # pattern move: plain coordinate sweeps zigzag along the curved
        # residual valley (per-sweep factor ~x^4, painfully slow for large x),
        # so also minimize along the net displacement of the whole sweep
        step = [coords[i] - start[i] for i in range(3)]
        if any(step):
            def g(t):
                return residual_at([coords[i] + t * step[i] for i in range(3)])

            t_best, current = _line_minimum(g, 0.0, current, 8.0)
            if t_best != 0.0:
                coords = [coords[i] + t_best * step[i] for i in range(3)]
        if current <= target:
            converged = True
            break
        if current >= before * (1.0 - 1e-12):
            # stalled: no sweep can improve further at this precision
            converged = current <= 1e-18
            break
    else:
        converged = current <= 1e-18

    lam, rho, nu = coords
    coeffs = SuperpositionCoeffs(1.0, lam, rho, nu)
    c = concurrence(coeffs, OverlapPair(x, x))
    if c < record.concurrence:
        return replace(record, refined=True, refine_converged=False)
    return ScanRecord(
        lam=lam,
        rho=rho,
        nu=nu,
        x=x,
        concurrence=c,
        class_a_residual=class_a_residual(coeffs, x),
        class_b_residual=class_b_residual(coeffs, x),
        refined=True,
        refine_converged=converged,
    )


def verify_disjoint_classes(
    records: list[ScanRecord],
    tol: float = 1e-8,
    maximal_tol: float = 1e-10,
) -> DisjointnessReport:
    """Check every near-maximal record sits on exactly one of the two families.

    Only records with concurrence > 1 - maximal_tol are tested; each must
    satisfy class (a) or class (b) at `tol`, and never both.
    """
    n_a = n_b = n_max = 0
    violations = []
    for record in records:
        if record.concurrence <= 1.0 - maximal_tol:
            continue
        n_max += 1
        coeffs = record.coefficients()
        a_ok = check_class_a(coeffs, record.x, tol)
        b_ok = check_class_b(coeffs, record.x, tol)
        if a_ok and b_ok:
            violations.append((record, "on both families"))
        elif not a_ok and not b_ok:
            violations.append((record, "near-maximal but on neither family"))
        elif a_ok:
            n_a += 1
        else:
            n_b += 1
    return DisjointnessReport(
        passed=not violations,
        n_records=len(records),
        n_maximal=n_max,
        n_class_a=n_a,
        n_class_b=n_b,
        violations=tuple(violations),
        tol=tol,
        maximal_tol=maximal_tol,
    )


def config_for_overlap(x: float) -> CoherentConfig:
    """Amplitudes (0, 0, g, g) whose common overlap is exactly-by-construction x."""
    gap = math.sqrt(-2.0 * math.log(x))
    return CoherentConfig(0.0, 0.0, gap, gap)


def oracle_spot_check(
    records: list[ScanRecord],
    fraction: float = 0.01,
    seed: int = 0,
    max_diff: float = 1e-8,
) -> tuple[int, float]:
    """Re-check a seeded random subsample of records against the Fock oracle.

    Returns (checked count, worst |analytic - oracle|); raises
    ConsistencyError if any difference exceeds `max_diff`.
    """
    if not records or fraction <= 0.0:
        return 0, 0.0
    rng = np.random.default_rng(seed)
    count = max(1, int(round(fraction * len(records))))
    count = min(count, len(records))
    indices = sorted(rng.choice(len(records), size=count, replace=False).tolist())
    worst = 0.0
    for i in indices:
        record = records[i]
        oracle_c = oracle_concurrence(config_for_overlap(record.x),
                                      record.coefficients())
        diff = abs(oracle_c - record.concurrence)
        worst = max(worst, diff)
        if diff > max_diff:
            raise ConsistencyError(
                f"oracle disagrees with scan record by {diff:.3e} at "
                f"lam={record.lam!r} rho={record.rho!r} nu={record.nu!r} "
                f"x={record.x!r}"
            )
    return count, worst


@dataclass(frozen=True)
class ScanOutcome:
    """Everything the scan pipeline produced."""

    records: tuple[ScanRecord, ...]
    report: DisjointnessReport
    n_grid_hits: int
    n_refined: int
    oracle_checked: int
    max_oracle_diff: float


def run_scan(
    config: ScanConfig,
    verify_tol: float = 1e-8,
    workers: int = 1,
) -> ScanOutcome:
    """Grid scan, refinement of near-maximal hits, disjointness verification,
    and the seeded oracle spot-check, in one deterministic pipeline."""
    hits = grid_scan(config, workers=workers)
    refined = [
        refine(record) if record.concurrence >= REFINE_FLOOR else record
        for record in hits
    ]
    report = verify_disjoint_classes(refined, tol=verify_tol)
    checked, worst = oracle_spot_check(
        refined, fraction=config.oracle_fraction, seed=config.seed
    )
    return ScanOutcome(
        records=tuple(refined),
        report=report,
        n_grid_hits=len(hits),
        n_refined=sum(1 for r in refined if r.refined),
        oracle_checked=checked,
        max_oracle_diff=worst,
    )
