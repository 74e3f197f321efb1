"""Classifiers and summary curves: heating detection, revivals, PT diagrams.

These functions turn stroboscopic entropy series and propagator spectra into
the phase labels used throughout: heating vs non-heating from the linear
growth rate of the half-chain entropy, revival periods from prominent
entropy minima, and PT symmetric vs broken from the modulus of the
non-Hermitian Floquet eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.signal import find_peaks

from .model import ChainParams, DriveFamily, DriveSpec
from .gaussian import (
    build_propagator,
    evolve,
    half_chain_entropy,
    half_filled_ground_state,
    two_step_propagator,
)
from .floquet_analytics import quasienergy_gap

DEFAULT_SLOPE_WINDOW = (5, 60)
DEFAULT_SLOPE_THRESHOLD = 0.02
DEFAULT_PT_TOL = 1e-6
DEFAULT_MIN_PROMINENCE = 0.2


class WindowTooShort(Exception):
    """Raised when a series cannot support the requested fit window."""


class NoRevivalDetected(Exception):
    """Raised when fewer than two prominent entropy minima exist."""


class PhaseLabel(Enum):
    NON_HEATING = "non-heating"
    HEATING = "heating"
    PT_SYMMETRIC = "pt-symmetric"
    PT_BROKEN = "pt-broken"


@dataclass(frozen=True)
class EETimeSeries:
    """Half-chain entropy at integer cycles, with the drive that produced it."""

    params: ChainParams
    drive: DriveSpec
    cycles: np.ndarray = field(repr=False)
    entropies: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.cycles) != len(self.entropies):
            raise ValueError("cycles and entropies must have equal length")


@dataclass(frozen=True)
class PhasePoint:
    period: float
    lam: float
    label: PhaseLabel
    score: float
    delta: float = 0.0


def half_chain_series(
    params: ChainParams, drive: DriveSpec, cycles: int, n_sub: int = 1024
) -> EETimeSeries:
    """Evolve the half-filled uniform ground state and record S_L per cycle.

    Non-unitary drives are renormalised every period (no-click evolution);
    unitary drives propagate the orbitals directly.
    """
    prop = build_propagator(params, drive, n_sub=n_sub)
    state = half_filled_ground_state(params)
    ent = np.empty(cycles + 1)
    ent[0] = half_chain_entropy(state)
    for n in range(1, cycles + 1):
        state = evolve(state, prop, renormalize=not prop.unitary)
        ent[n] = half_chain_entropy(state)
    return EETimeSeries(
        params=params, drive=drive, cycles=np.arange(cycles + 1), entropies=ent
    )


def classify_heating(
    series: EETimeSeries,
    window: tuple[int, int] = DEFAULT_SLOPE_WINDOW,
    slope_threshold: float = DEFAULT_SLOPE_THRESHOLD,
) -> PhasePoint:
    """Label a series heating when the entropy slope over ``window`` exceeds
    ``slope_threshold`` (nats per cycle).

    The default window starts at cycle 5 to skip the initial spreading from
    the defect.  The fit is an ordinary least-squares line, so the label is
    invariant under adding a constant to the series.
    """
    lo, hi = window
    if len(series.entropies) < 10 or hi >= len(series.entropies) or hi - lo < 2:
        raise WindowTooShort(
            f"series of length {len(series.entropies)} cannot fit window {window}"
        )
    x = series.cycles[lo : hi + 1]
    y = series.entropies[lo : hi + 1]
    slope = float(np.polyfit(x, y, 1)[0])
    label = PhaseLabel.HEATING if slope > slope_threshold else PhaseLabel.NON_HEATING
    return PhasePoint(
        period=series.drive.period,
        lam=series.drive.lam,
        label=label,
        score=slope,
        delta=series.params.delta,
    )


def _prominent_minima(entropies: np.ndarray, rel_prominence: float) -> np.ndarray:
    spread = float(entropies.max() - entropies.min())
    if spread == 0.0:
        return np.array([], dtype=int)
    minima, _ = find_peaks(-entropies, prominence=rel_prominence * spread)
    return minima


def quasiparticle_velocity(delta: float) -> float:
    """Sound velocity of the gapless interacting chain, v = (pi/2) sqrt(1-d^2)/arccos(d).

    Equals 1 in the free case; revivals of the half-chain entropy recur with
    period 2L / v.
    """
    if not -1.0 < delta < 1.0:
        raise ValueError("velocity formula requires |delta| < 1")
    if delta == 0.0:
        return 1.0
    return float(0.5 * np.pi * np.sqrt(1.0 - delta * delta) / np.arccos(delta))


def expected_revival_period(params: ChainParams) -> float:
    """Ballistic revival period 2L / v(delta) of the half-chain entropy."""
    return params.n_sites / quasiparticle_velocity(params.delta)


def revival_period(series: EETimeSeries, min_prominence: float = DEFAULT_MIN_PROMINENCE) -> float:
    """Mean spacing of the prominent entropy minima, in time units.

    Revivals return the half-chain entropy toward its initial value, so they
    are detected as local minima with prominence at least ``min_prominence``
    times the series range.  Raises NoRevivalDetected with fewer than two.
    """
    minima = _prominent_minima(series.entropies, min_prominence)
    if len(minima) < 2:
        raise NoRevivalDetected(f"found {len(minima)} prominent minima, need >= 2")
    return float(np.mean(np.diff(minima)) * series.drive.period)


def count_recurrences(
    series: EETimeSeries,
    early_window: int = 30,
    rel_prominence: float = 0.05,
    rel_tol: float = 0.10,
) -> int:
    """Number of prominent minima within ``rel_tol`` of the early-time minimum.

    The early-time minimum is taken over cycles 1..early_window; any
    prominent local minimum (from cycle 1 on) whose entropy is at most
    (1 + rel_tol) times that value counts as a recurrence.
    """
    ent = series.entropies
    if len(ent) <= early_window:
        raise WindowTooShort("series shorter than the early window")
    early_min = float(ent[1 : early_window + 1].min())
    minima = _prominent_minima(ent, rel_prominence)
    return int(np.sum(ent[minima] <= (1.0 + rel_tol) * early_min))


def pt_classify(params: ChainParams, drive: DriveSpec, tol: float = DEFAULT_PT_TOL) -> PhasePoint:
    """PT label from the eigenvalue moduli of the two-step propagator.

    score = max_n ||u_n| - 1|; the spectrum of an unbroken PT-symmetric
    period sits on the unit circle, so the point is PT symmetric iff the
    score stays below ``tol``.
    """
    if drive.family not in (DriveFamily.TWO_STEP, DriveFamily.NON_HERMITIAN_TWO_STEP):
        raise ValueError("pt_classify requires a two-step drive family")
    u = np.linalg.eigvals(two_step_propagator(params, drive).matrix)
    score = float(np.max(np.abs(np.abs(u) - 1.0)))
    label = PhaseLabel.PT_SYMMETRIC if score < tol else PhaseLabel.PT_BROKEN
    return PhasePoint(
        period=drive.period, lam=drive.lam, label=label, score=score, delta=params.delta
    )


def _drive_for(lam: float, T: float) -> DriveSpec:
    family = DriveFamily.NON_HERMITIAN_TWO_STEP if lam > 1 else DriveFamily.TWO_STEP
    return DriveSpec(family=family, period=T, lam=lam)


def phase_diagram(
    params: ChainParams,
    T_values: np.ndarray,
    lam_values: np.ndarray,
    tol: float = DEFAULT_PT_TOL,
) -> list[PhasePoint]:
    """PT labels on the (T, lambda) grid, row-major over lambda then T."""
    points = []
    for lam in lam_values:
        for T in T_values:
            points.append(pt_classify(params, _drive_for(float(lam), float(T)), tol=tol))
    return points


def pt_boundary(
    params: ChainParams,
    lam: float,
    T_values: np.ndarray,
    tol: float = DEFAULT_PT_TOL,
) -> float | None:
    """Estimated PT-breaking period: midpoint of the first symmetric-to-broken
    step of the scan, or None when no transition is bracketed."""
    prev_T = None
    for T in T_values:
        point = pt_classify(params, _drive_for(lam, float(T)), tol=tol)
        if point.label is PhaseLabel.PT_BROKEN:
            if prev_T is None:
                return None
            return 0.5 * (prev_T + float(T))
        prev_T = float(T)
    return None


def refine_pt_boundary(
    params: ChainParams,
    lam: float,
    lo: float,
    hi: float,
    tol_T: float = 1e-3,
    tol: float = DEFAULT_PT_TOL,
) -> float:
    """Bisect a bracketing interval (symmetric at lo, broken at hi)."""
    while hi - lo > tol_T:
        mid = 0.5 * (lo + hi)
        point = pt_classify(params, _drive_for(lam, mid), tol=tol)
        if point.label is PhaseLabel.PT_SYMMETRIC:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gap_curve(
    params: ChainParams,
    T_values: np.ndarray,
    family: DriveFamily = DriveFamily.HARMONIC,
    lam: float = 0.5,
) -> list[tuple[float, float]]:
    """(T, gap) pairs along a period sweep.

    Harmonic family: band gap of the closed-form stroboscopic generator.
    Two-step family: a folded-spectrum proxy, the largest gap between sorted
    eigenphases on the quasienergy circle minus the mean level spacing
    (finite-size stand-in for the folding threshold).
    """
    out = []
    if family is DriveFamily.HARMONIC:
        for T in T_values:
            out.append((float(T), quasienergy_gap(params, float(T))))
        return out
    n = params.n_sites
    for T in T_values:
        drive = _drive_for(lam, float(T))
        u = np.linalg.eigvals(two_step_propagator(params, drive).matrix)
        eps = np.sort(-np.angle(u) / T)
        gaps = np.diff(eps)
        wrap = 2.0 * np.pi / T - (eps[-1] - eps[0])
        largest = float(max(gaps.max(), wrap))
        out.append((float(T), largest - 2.0 * np.pi / T / n))
    return out
