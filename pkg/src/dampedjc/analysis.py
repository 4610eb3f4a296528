"""Trajectory sampling, sudden-death detection, averages, and parameter sweeps.

Turns the concurrence dynamics into the quantities the contour and curve
figures are built from: uniformly sampled traces (closed form or oracle),
zero-concurrence interval reports with bisection-refined death and revival
times, windowed time averages, and 2-D parameter sweeps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form, oracle
from .closed_form import ConcurrenceSample
from .model import Family, InitialState, ModelParams

__all__ = [
    "Source",
    "AxisSpec",
    "ConcurrenceTrace",
    "SdeReport",
    "SweepGrid",
    "ComparisonCell",
    "trace",
    "detect_sde",
    "sde_interval_vs_alpha",
    "time_average",
    "sweep",
    "compare_closed_oracle",
    "DEFAULT_DT",
    "SAMPLES_PER_2PI",
]

#: Default integrator step for oracle-sourced quantities, in units of 1/g.
DEFAULT_DT = 1.0e-3

#: Default trace resolution: samples per 2*pi of dimensionless time.
SAMPLES_PER_2PI = 2000

_AXIS_NAMES = ("delta", "gamma", "alpha", "T")


class Source(enum.Enum):
    """Which evaluation path produced a trace."""

    CLOSED_FORM = "closed"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ConcurrenceTrace:
    """Uniformly sampled concurrence trajectory.

    ``samples`` hold (T, value, raw); ``norms`` the matching survival
    probabilities sum(|x_i|^2).  ``dt`` and ``renormalize`` record how the
    trace was produced so detection can re-evaluate the underlying function
    when refining interval boundaries.
    """

    params: ModelParams
    initial: InitialState
    samples: tuple[ConcurrenceSample, ...]
    source: Source
    norms: tuple[float, ...]
    dt: float = DEFAULT_DT
    renormalize: bool = False

    @property
    def times(self) -> np.ndarray:
        return np.array([s.T for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    @property
    def raws(self) -> np.ndarray:
        return np.array([s.raw for s in self.samples])

    @property
    def dT_sample(self) -> float:
        return self.samples[1].T - self.samples[0].T


@dataclass(frozen=True)
class SdeReport:
    """Detected zero-concurrence intervals.

    ``intervals`` are ordered, disjoint (death_T, revival_T) pairs;
    revival_T is +inf when the concurrence has not recovered by the end of
    the trace.  An interval is only reported when the unclamped value dips
    below -tolerance strictly inside it, so isolated tangential zeros never
    count as sudden death.
    """

    intervals: tuple[tuple[float, float], ...]
    min_raw: float
    tolerance: float

    def total_dark_time(self, T_max: float) -> float:
        """Total zero-concurrence duration, truncating open intervals at T_max."""
        return sum(min(b, T_max) - a for a, b in self.intervals)


@dataclass(frozen=True)
class SweepGrid:
    """Concurrence evaluated on the outer product of two parameter axes."""

    axis1: "AxisSpec"
    axis2: "AxisSpec"
    values: np.ndarray  # shape (axis1.n, axis2.n), row-major over (axis1, axis2)
    fixed: dict = field(default_factory=dict)


@dataclass(frozen=True)
class AxisSpec:
    """Uniformly sampled sweep axis over delta, gamma, alpha, or T (units of g)."""

    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if self.name not in _AXIS_NAMES:
            raise ValueError(f"axis name must be one of {_AXIS_NAMES}, got {self.name!r}")
        if self.n < 2:
            raise ValueError(f"axis needs at least 2 points, got {self.n}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("axis bounds must be finite")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


def trace(
    params: ModelParams,
    initial: InitialState,
    T_max: float,
    n_samples: int,
    source: Source = Source.CLOSED_FORM,
    dt: float = DEFAULT_DT,
    renormalize: bool = False,
) -> ConcurrenceTrace:
    """Concurrence sampled uniformly on [0, T_max], both endpoints included."""
    if not (T_max > 0.0 and math.isfinite(T_max)):
        raise ValueError(f"T_max must be positive and finite, got {T_max}")
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples}")
    times = np.linspace(0.0, T_max, n_samples)
    raws, norms = _evaluate(params, initial, times, source, dt, renormalize)
    samples = tuple(
        ConcurrenceSample(T=float(t), value=max(float(r), 0.0), raw=float(r))
        for t, r in zip(times, raws)
    )
    return ConcurrenceTrace(
        params=params,
        initial=initial,
        samples=samples,
        source=source,
        norms=tuple(float(n) for n in norms),
        dt=dt,
        renormalize=renormalize,
    )


def _evaluate(
    params: ModelParams,
    initial: InitialState,
    times: np.ndarray,
    source: Source,
    dt: float,
    renormalize: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """(raw concurrence, survival probability) arrays along `times`."""
    if source is Source.CLOSED_FORM:
        return closed_form.concurrence_curve(params, initial, times, renormalize)
    sector = oracle.build_sector(params, initial.family)
    state = oracle.initial_state_vector(sector, initial)
    amps, _ = oracle.integrate_trajectory(sector, state, times, dt)
    rhos = oracle._trace_batch(amps, sector.basis_labels)
    raws = oracle._wootters_raw_batch(rhos)
    norms = np.real(np.einsum("ij,ij->i", amps.conj(), amps))
    if renormalize:
        raws = raws / norms
    return raws, norms


def _raw_function(trace_: ConcurrenceTrace):
    """Scalar T -> raw concurrence, matching how the trace was produced."""
    def f(t: float) -> float:
        raws, _ = _evaluate(
            trace_.params, trace_.initial, np.array([t]), trace_.source,
            trace_.dt, trace_.renormalize,
        )
        return float(raws[0])

    return f


def _bisect_zero(f, lo: float, hi: float, f_lo: float, f_hi: float, tol: float) -> float:
    """Root of raw() in [lo, hi] given a sign change, to absolute tolerance tol."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if (f_lo >= 0.0) == (f_mid >= 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def detect_sde(trace_: ConcurrenceTrace, tol: float = 1.0e-9) -> SdeReport:
    """Locate sudden-death intervals by scanning the unclamped concurrence.

    Contiguous runs with raw < -tol become intervals; their boundaries are
    refined by bisection on the underlying concurrence function to within
    dT_sample/100.  Isolated zeros are not sudden death: raw touching zero
    from above never opens an interval, and raw touching zero from below
    inside a dark window (no sample recovering past +tol) does not split
    it.  A trace whose raw values never dip below -tol yields an empty
    report.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    raws = trace_.raws
    times = trace_.times
    below = raws < -tol
    if not below.any():
        return SdeReport(intervals=(), min_raw=float(raws.min()), tolerance=tol)

    runs: list[tuple[int, int]] = []
    i = 0
    n = len(raws)
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and below[j + 1]:
            j += 1
        runs.append((i, j))
        i = j + 1
    # merge runs separated only by samples that never recover past +tol
    merged = [runs[0]]
    for i, j in runs[1:]:
        prev_i, prev_j = merged[-1]
        if float(np.max(raws[prev_j + 1 : i])) <= tol:
            merged[-1] = (prev_i, j)
        else:
            merged.append((i, j))

    f = _raw_function(trace_)
    refine_tol = trace_.dT_sample / 100.0
    intervals: list[tuple[float, float]] = []
    for i, j in merged:
        # death boundary: nearest earlier sample with raw >= 0 brackets the crossing
        if i == 0:
            death = times[0]
        else:
            k = i - 1
            while k > 0 and raws[k] < 0.0:
                k -= 1
            if raws[k] < 0.0:
                death = times[0]
            else:
                death = _bisect_zero(f, times[k], times[i], raws[k], raws[i], refine_tol)
        # revival boundary
        if j == n - 1:
            revival = math.inf
        else:
            k = j + 1
            while k < n - 1 and raws[k] < 0.0:
                k += 1
            if raws[k] < 0.0:
                revival = math.inf
            else:
                revival = _bisect_zero(f, times[j], times[k], raws[j], raws[k], refine_tol)
        intervals.append((float(death), float(revival)))
    return SdeReport(intervals=tuple(intervals), min_raw=float(raws.min()), tolerance=tol)


def sde_interval_vs_alpha(
    params: ModelParams,
    alphas,
    T_max: float = 2.0 * math.pi,
    source: Source = Source.CLOSED_FORM,
    tol: float = 1.0e-9,
    dt: float = DEFAULT_DT,
) -> list[float]:
    """Total zero-concurrence duration within [0, T_max] for each alpha.

    Uses the double-excitation family (the only one showing sudden death).
    On the resonant lossless line the durations are non-increasing in
    sin(2*alpha): the weaker the initial entanglement, the longer the state
    stays separable.
    """
    n = max(2, int(round(SAMPLES_PER_2PI * T_max / (2.0 * math.pi))))
    out = []
    for alpha in alphas:
        tr = trace(params, InitialState(Family.PHI, float(alpha)), T_max, n, source, dt)
        out.append(detect_sde(tr, tol).total_dark_time(T_max))
    return out


def time_average(trace_: ConcurrenceTrace, T_from: float) -> float:
    """Trapezoidal mean of the concurrence over [T_from, T_end].

    The left boundary value is linearly interpolated when T_from falls
    between samples.
    """
    times = trace_.times
    values = trace_.values
    if T_from >= times[-1]:
        raise ValueError(f"T_from={T_from} is not before the final sample T={times[-1]}")
    if T_from <= times[0]:
        sel_t, sel_v = times, values
    else:
        inside = times > T_from
        sel_t = np.concatenate(([T_from], times[inside]))
        sel_v = np.concatenate(([np.interp(T_from, times, values)], values[inside]))
    return float(np.trapezoid(sel_v, sel_t) / (sel_t[-1] - sel_t[0]))


def sweep(
    axis1: AxisSpec,
    axis2: AxisSpec,
    initial: InitialState,
    gamma: float = 0.0,
    delta: float = 0.0,
    T: float | None = None,
    source: Source = Source.CLOSED_FORM,
    dt: float = DEFAULT_DT,
    renormalize: bool = False,
) -> SweepGrid:
    """Concurrence on the outer product of two parameter axes.

    Non-axis parameters are held at the given fixed values (gamma and delta
    in units of g, alpha from `initial`); T must be fixed when it is not an
    axis.  Evaluation order is unspecified but the output is deterministic.
    """
    if axis1.name == axis2.name:
        raise ValueError(f"sweep axes must be distinct, both are {axis1.name!r}")
    names = {axis1.name, axis2.name}
    if "T" not in names and T is None:
        raise ValueError("fixed T is required when T is not a sweep axis")
    fixed = {"gamma": gamma, "delta": delta, "alpha": initial.alpha}
    if T is not None:
        fixed["T"] = T
    fixed = {k: v for k, v in fixed.items() if k not in names}

    def resolve(name: str, v1: float, v2: float) -> float:
        if axis1.name == name:
            return v1
        if axis2.name == name:
            return v2
        return fixed[name]

    values = np.empty((axis1.n, axis2.n))
    t_axis_2 = axis2.name == "T"
    t_axis_1 = axis1.name == "T"
    for i, v1 in enumerate(axis1.grid):
        if t_axis_2:
            params = ModelParams.from_rates(
                gamma=resolve("gamma", v1, 0.0), delta=resolve("delta", v1, 0.0)
            )
            ini = InitialState(initial.family, resolve("alpha", v1, 0.0))
            raws, _ = _evaluate(params, ini, axis2.grid, source, dt, renormalize)
            values[i, :] = np.maximum(raws, 0.0)
        elif t_axis_1:
            for j, v2 in enumerate(axis2.grid):
                params = ModelParams.from_rates(
                    gamma=resolve("gamma", v1, v2), delta=resolve("delta", v1, v2)
                )
                ini = InitialState(initial.family, resolve("alpha", v1, v2))
                raws, _ = _evaluate(params, ini, np.array([v1]), source, dt, renormalize)
                values[i, j] = max(float(raws[0]), 0.0)
        else:
            for j, v2 in enumerate(axis2.grid):
                params = ModelParams.from_rates(
                    gamma=resolve("gamma", v1, v2), delta=resolve("delta", v1, v2)
                )
                ini = InitialState(initial.family, resolve("alpha", v1, v2))
                raws, _ = _evaluate(
                    params, ini, np.array([resolve("T", v1, v2)]), source, dt, renormalize
                )
                values[i, j] = max(float(raws[0]), 0.0)
    return SweepGrid(axis1=axis1, axis2=axis2, values=values, fixed=fixed)


@dataclass(frozen=True)
class ComparisonCell:
    """Closed-form vs oracle deviation for one parameter cell."""

    family: Family
    kappa: float
    delta: float
    alpha: float
    max_abs_diff: float
    min_oracle_raw: float


def compare_closed_oracle(
    kappas=(0.0, 0.5, 1.0),
    deltas=(0.0, 1.0, -1.0, 3.0, -3.0, 5.0, -5.0),
    alphas=(math.pi / 6, math.pi / 4, math.pi / 3),
    families=(Family.PSI, Family.PHI),
    T_max: float = 5.0 * math.pi,
    n_samples: int = 2000,
    dt: float = DEFAULT_DT,
    renormalize: bool = False,
) -> list[ComparisonCell]:
    """Max |C_closed - C_oracle| per (family, kappa, delta, alpha) cell.

    The oracle trajectories for the alphas of one cell share a Hamiltonian
    and are integrated as an independent batch of columns.  Runs the full
    default grid in well under a minute.
    """
    times = np.linspace(0.0, T_max, n_samples)
    cells: list[ComparisonCell] = []
    for family in families:
        for kappa in kappas:
            for delta in deltas:
                params = ModelParams.from_rates(gamma=kappa, delta=delta)
                sector = oracle.build_sector(params, family)
                columns = np.stack(
                    [
                        oracle.initial_state_vector(sector, InitialState(family, a)).amplitudes
                        for a in alphas
                    ],
                    axis=1,
                )
                amps, _ = oracle._integrate_batch(sector, columns, times, dt)
                for k, alpha in enumerate(alphas):
                    rhos = oracle._trace_batch(amps[:, :, k], sector.basis_labels)
                    oracle_raw = oracle._wootters_raw_batch(rhos)
                    if renormalize:
                        oracle_raw = oracle_raw / np.real(
                            np.einsum("ij,ij->i", amps[:, :, k].conj(), amps[:, :, k])
                        )
                    closed_raw, _ = closed_form.concurrence_curve(
                        params, InitialState(family, alpha), times, renormalize
                    )
                    diff = np.max(
                        np.abs(np.maximum(closed_raw, 0.0) - np.maximum(oracle_raw, 0.0))
                    )
                    cells.append(
                        ComparisonCell(
                            family=family,
                            kappa=kappa,
                            delta=delta,
                            alpha=alpha,
                            max_abs_diff=float(diff),
                            min_oracle_raw=float(np.min(oracle_raw)),
                        )
                    )
    return cells
