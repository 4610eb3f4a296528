"""Brute-force reference path, independent of the closed forms.

Builds the non-Hermitian sector Hamiltonian on the truncated product basis,
integrates the Schrodinger equation i d|psi>/dT = (H/g)|psi> with fixed-step
classical RK4, traces out the photons, and evaluates the general Wootters
concurrence.  Serves as ground truth for the closed-form module.

The rotating-wave Hamiltonian conserves total excitation number except for
the pure -i*gamma/2 loss term, which only removes norm, and the initial
states put at most one photon in each cavity, so the 4- and 5-dimensional
sectors below are exact, not truncations.  Lost population is not
reinjected anywhere: the decay is pure non-Hermitian norm loss.

Frames.  The lab-frame diagonal is omega*(number of excitations of any
kind) plus delta per photon; since each sector mixes states of fixed
excitation number (plus the fully decoupled |gg00>), dropping a multiple of
the excitation number only changes unobservable phases.  ``frame="atom"``
keeps delta on the photon states, ``frame="cavity"`` keeps -delta on the
excited atoms; gauge-invariant outputs (moduli, concurrence) agree between
the two, which the tests assert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import ConcurrenceSample
from .model import Family, InitialState, ModelParams

__all__ = [
    "PSI_BASIS",
    "PHI_BASIS",
    "MAX_DT",
    "HamiltonianSector",
    "StateVector",
    "build_sector",
    "initial_state_vector",
    "integrate",
    "integrate_trajectory",
    "step_halving_error",
    "partial_trace_fields",
    "wootters_concurrence",
    "x_state_concurrence",
]

# Basis labels: atom A, atom B, photon number in cavity a, in cavity b.
PSI_BASIS = ("eg00", "ge00", "gg10", "gg01")
PHI_BASIS = ("ee00", "gg11", "eg01", "ge10", "gg00")

#: Accuracy guard for the fixed-step integrator, in units of 1/g.
MAX_DT = 0.01

#: Integration aborts if the squared norm ever exceeds 1 + this.
_NORM_GUARD = 1.0e-6

_ATOMIC_ORDER = ("ee", "eg", "ge", "gg")

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class HamiltonianSector:
    """Dense sector Hamiltonian H/g with its ordered basis labels.

    The anti-Hermitian part is -i*(kappa/2) per excited atom; at gamma = 0
    the matrix is Hermitian to machine precision.
    """

    family: Family
    matrix: np.ndarray
    basis_labels: tuple[str, ...]
    frame: str


@dataclass(frozen=True)
class StateVector:
    """Sector state: complex amplitudes over the sector basis at time T."""

    sector: HamiltonianSector
    amplitudes: np.ndarray
    T: float

    def norm_sq(self) -> float:
        return float(np.real(np.vdot(self.amplitudes, self.amplitudes)))


def build_sector(params: ModelParams, family: Family, frame: str = "atom") -> HamiltonianSector:
    """Sector matrix of the two-pair Hamiltonian, in units of g.

    Diagonal entries depend only on the detuning (plus -i*kappa/2 per
    excited atom); each atom-cavity pair contributes a coupling of
    strength 1 between |e,0> and |g,1>.
    """
    if not isinstance(family, Family):
        raise ValueError(f"unknown family {family!r}")
    if frame not in ("atom", "cavity"):
        raise ValueError(f"unknown frame {frame!r}; expected 'atom' or 'cavity'")
    labels = PSI_BASIS if family is Family.PSI else PHI_BASIS
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    kappa = params.kappa
    d = params.detuning
    h = np.zeros((dim, dim), dtype=complex)
    for i, lab in enumerate(labels):
        atoms, photons = lab[:2], lab[2:]
        n_exc = atoms.count("e")
        n_ph = photons.count("1")
        if frame == "atom":
            h[i, i] = d * n_ph - 0.5j * kappa * n_exc
        else:
            h[i, i] = -d * n_exc - 0.5j * kappa * n_exc
        for pair in (0, 1):  # (atom A, cavity a) and (atom B, cavity b)
            atom, photon = lab[pair], lab[2 + pair]
            if atom == "e" and photon == "0":  # emission a^dag sigma_-
                target = _replace(lab, pair, "g", "1")
            elif atom == "g" and photon == "1":  # absorption a sigma_+
                target = _replace(lab, pair, "e", "0")
            else:
                continue
            j = index.get(target)
            if j is None:
                raise AssertionError(f"sector not closed: {lab} -> {target}")
            h[j, i] += 1.0
    return HamiltonianSector(family=family, matrix=h, basis_labels=labels, frame=frame)


def _replace(label: str, pair: int, atom: str, photon: str) -> str:
    chars = list(label)
    chars[pair] = atom
    chars[2 + pair] = photon
    return "".join(chars)


def initial_state_vector(sector: HamiltonianSector, initial: InitialState) -> StateVector:
    """Normalized state vector encoding the requested initial superposition."""
    if initial.family is not sector.family:
        raise ValueError(f"initial state family {initial.family} does not match sector {sector.family}")
    amp = np.zeros(len(sector.basis_labels), dtype=complex)
    labels = sector.basis_labels
    if initial.family is Family.PSI:
        amp[labels.index("eg00")] = math.cos(initial.alpha)
        amp[labels.index("ge00")] = math.sin(initial.alpha)
    else:
        amp[labels.index("ee00")] = math.cos(initial.alpha)
        amp[labels.index("gg00")] = math.sin(initial.alpha)
    return StateVector(sector=sector, amplitudes=amp, T=0.0)


def _check_dt(dt: float) -> None:
    if not (0.0 < dt <= MAX_DT):
        raise ValueError(f"dt must be in (0, {MAX_DT}], got {dt}")


def _norms_sq(y: np.ndarray) -> np.ndarray:
    """Squared norm per state column; works for a vector or a (dim, m) batch."""
    if y.ndim == 1:
        return np.array([float(np.real(np.vdot(y, y)))])
    return np.real(np.einsum("ij,ij->j", y.conj(), y))


def _rk4_span(
    a: np.ndarray, y: np.ndarray, span: float, dt: float
) -> tuple[np.ndarray, float]:
    """Advance dy/dT = a @ y over `span` with uniform RK4 steps of size <= dt.

    Returns the final state and the largest single-step increase of any
    column's squared norm (signals a Hamiltonian-sign or integration bug
    when positive beyond round-off).
    """
    if span == 0.0:
        return y, 0.0
    n = max(1, math.ceil(span / dt))
    h = span / n
    max_jump = 0.0
    norm_before = _norms_sq(y)
    for _ in range(n):
        k1 = a @ y
        k2 = a @ (y + 0.5 * h * k1)
        k3 = a @ (y + 0.5 * h * k2)
        k4 = a @ (y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm_after = _norms_sq(y)
        max_jump = max(max_jump, float(np.max(norm_after - norm_before)))
        worst = float(np.max(norm_after))
        if worst > 1.0 + _NORM_GUARD:
            raise RuntimeError(
                f"state norm grew to {worst:.6g} > 1 + {_NORM_GUARD}; "
                "Hamiltonian sign or integration error"
            )
        norm_before = norm_after
    return y, max_jump


def integrate(
    sector: HamiltonianSector, initial: StateVector, T_final: float, dt: float = 1.0e-3
) -> StateVector:
    """Evolve a state to T_final with fixed-step classical RK4.

    Parameters
    ----------
    sector : HamiltonianSector
        Sector whose matrix generates the evolution.
    initial : StateVector
        Starting state; integration runs forward from initial.T.
    T_final : float
        Target dimensionless time, >= initial.T.
    dt : float
        Step-size cap, in units of 1/g.  Must be in (0, MAX_DT]; the span
        is divided into uniform steps no longer than dt.

    Raises
    ------
    ValueError
        If dt violates the accuracy guard or T_final < initial.T.
    RuntimeError
        If the norm grows beyond 1 + 1e-6 during integration.
    """
    _check_dt(dt)
    span = T_final - initial.T
    if span < 0.0:
        raise ValueError(f"T_final={T_final} is earlier than the state's T={initial.T}")
    a = -1j * sector.matrix
    y, _ = _rk4_span(a, initial.amplitudes.astype(complex), span, dt)
    return StateVector(sector=sector, amplitudes=y, T=float(T_final))


def integrate_trajectory(
    sector: HamiltonianSector,
    initial: StateVector,
    times: np.ndarray,
    dt: float = 1.0e-3,
) -> tuple[np.ndarray, float]:
    """Sample the evolution at the requested times (ascending, >= initial.T).

    Returns ``(amplitudes, max_norm_jump)`` where amplitudes has shape
    (len(times), dim) and max_norm_jump is the largest single-step increase
    of the squared norm seen anywhere along the trajectory.
    """
    _check_dt(dt)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-D array")
    if times[0] < initial.T or np.any(np.diff(times) < 0.0):
        raise ValueError("times must be ascending and start no earlier than the state's T")
    a = -1j * sector.matrix
    y = initial.amplitudes.astype(complex)
    t = initial.T
    out = np.empty((times.size, y.shape[0]), dtype=complex)
    max_jump = 0.0
    for i, target in enumerate(times):
        y, jump = _rk4_span(a, y, float(target) - t, dt)
        max_jump = max(max_jump, jump)
        t = float(target)
        out[i] = y
    return out, max_jump


def _integrate_batch(
    sector: HamiltonianSector, y0: np.ndarray, times: np.ndarray, dt: float
) -> tuple[np.ndarray, float]:
    """Trajectory for a (dim, m) batch of initial columns, each an independent
    RK4 integration sharing the same Hamiltonian.

    Returns ``(amplitudes, max_norm_jump)`` with amplitudes of shape
    (len(times), dim, m).
    """
    _check_dt(dt)
    a = -1j * sector.matrix
    y = np.array(y0, dtype=complex)
    t = 0.0
    out = np.empty((len(times), *y.shape), dtype=complex)
    max_jump = 0.0
    for i, target in enumerate(np.asarray(times, dtype=float)):
        y, jump = _rk4_span(a, y, float(target) - t, dt)
        max_jump = max(max_jump, jump)
        t = float(target)
        out[i] = y
    return out, max_jump


def step_halving_error(
    sector: HamiltonianSector, initial: StateVector, T_final: float, dt: float = 1.0e-3
) -> float:
    """Max-norm difference between integrating with dt and with dt/2.

    A cheap a-posteriori error estimate; for 4th-order RK the true error of
    the dt/2 result is roughly this value divided by 15.
    """
    coarse = integrate(sector, initial, T_final, dt)
    fine = integrate(sector, initial, T_final, dt / 2.0)
    return float(np.max(np.abs(coarse.amplitudes - fine.amplitudes)))


# ---------------------------------------------------------------------------
# Reduced density matrix and concurrence
# ---------------------------------------------------------------------------


def _photon_groups(labels: tuple[str, ...]) -> dict[str, list[tuple[int, int]]]:
    """Map photon configuration -> [(basis index, atomic index)]."""
    groups: dict[str, list[tuple[int, int]]] = {}
    for i, lab in enumerate(labels):
        atomic = _ATOMIC_ORDER.index(lab[:2])
        groups.setdefault(lab[2:], []).append((i, atomic))
    return groups


def partial_trace_fields(state: StateVector) -> np.ndarray:
    """Two-atom reduced density matrix, tracing out both photon modes.

    Returns a 4x4 Hermitian positive-semidefinite matrix over the ordered
    atomic basis (|ee>, |eg>, |ge>, |gg>).  Its trace equals the surviving
    norm, below 1 under decay.
    """
    rho = np.zeros((4, 4), dtype=complex)
    amp = state.amplitudes
    for members in _photon_groups(state.sector.basis_labels).values():
        for i, ai in members:
            for j, aj in members:
                rho[ai, aj] += amp[i] * np.conj(amp[j])
    return rho


def _trace_batch(amplitudes: np.ndarray, labels: tuple[str, ...]) -> np.ndarray:
    """Partial trace for a stack of state vectors, shape (n, dim) -> (n, 4, 4)."""
    n = amplitudes.shape[0]
    rho = np.zeros((n, 4, 4), dtype=complex)
    for members in _photon_groups(labels).values():
        idx = [i for i, _ in members]
        atomic = [a for _, a in members]
        block = amplitudes[:, idx]
        rho[np.ix_(np.arange(n), atomic, atomic)] += block[:, :, None] * block.conj()[:, None, :]
    return rho


def _check_density_matrix(rho: np.ndarray, psd_tol: float = 1.0e-8) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1.0e-9:
        raise ValueError("density matrix is not Hermitian")
    if float(np.min(np.linalg.eigvalsh(rho))) < -psd_tol:
        raise ValueError("density matrix is significantly non-positive")
    return rho


def _wootters_raw_batch(rho: np.ndarray) -> np.ndarray:
    """Unclamped Wootters combination lambda1 - lambda2 - lambda3 - lambda4.

    The lambdas are the square roots of the eigenvalues of rho @ rho~ with
    rho~ = (sy x sy) conj(rho) (sy x sy).  They are computed as the
    singular values of sqrt(rho) @ (sy x sy) @ conj(sqrt(rho)), which is
    algebraically identical but avoids the square-root amplification of
    eigensolver round-off near zero eigenvalues (the product matrix has a
    triple zero eigenvalue for every single-excitation state, where a
    general eigensolver loses ~1e-9 of accuracy).
    """
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    sqrt_rho = (v * np.sqrt(w)[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))
    m = sqrt_rho @ _YY @ np.conj(sqrt_rho)
    lam = np.linalg.svd(m, compute_uv=False)
    lam = np.sort(lam, axis=-1)
    return lam[..., 3] - lam[..., 2] - lam[..., 1] - lam[..., 0]


def wootters_concurrence(
    rho: np.ndarray, renormalize: bool = False, T: float = 0.0
) -> ConcurrenceSample:
    """General two-qubit concurrence of a 4x4 density matrix.

    raw is the unclamped combination lambda1 - lambda2 - lambda3 - lambda4
    and value = max(raw, 0).  Rejects non-Hermitian input and matrices with
    an eigenvalue below -1e-8.  Concurrence is homogeneous of degree one,
    so ``renormalize`` simply divides by the trace.
    """
    rho = _check_density_matrix(rho)
    raw = float(_wootters_raw_batch(rho))
    if renormalize:
        tr = float(np.real(np.trace(rho)))
        if tr <= 0.0:
            raise ValueError("cannot renormalize a trace-zero density matrix")
        raw /= tr
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


def x_state_concurrence(
    rho: np.ndarray, renormalize: bool = False, T: float = 0.0
) -> ConcurrenceSample:
    """Closed-form concurrence for X-shaped density matrices.

    Accepts matrices that are nonzero only on the diagonal and the
    anti-diagonal coherence pairs (|ee>,|gg>) and (|eg>,|ge>); off-pattern
    entries must be below 1e-10.  raw is the larger of

        2*(|rho_eg,ge| - sqrt(rho_ee,ee * rho_gg,gg))
        2*(|rho_ee,gg| - sqrt(rho_eg,eg * rho_ge,ge))

    and agrees with :func:`wootters_concurrence` whenever either is
    positive (and in clamped value always).
    """
    rho = _check_density_matrix(rho)
    pattern = np.zeros((4, 4), dtype=bool)
    pattern[np.arange(4), np.arange(4)] = True
    pattern[0, 3] = pattern[3, 0] = pattern[1, 2] = pattern[2, 1] = True
    if np.max(np.abs(rho[~pattern])) > 1.0e-10:
        raise ValueError("density matrix does not have the X pattern")
    diag = np.clip(np.real(np.diag(rho)), 0.0, None)
    inner = 2.0 * (abs(rho[1, 2]) - math.sqrt(diag[0] * diag[3]))
    outer = 2.0 * (abs(rho[0, 3]) - math.sqrt(diag[1] * diag[2]))
    raw = max(inner, outer)
    if renormalize:
        tr = float(np.sum(diag))
        if tr <= 0.0:
            raise ValueError("cannot renormalize a trace-zero density matrix")
        raw /= tr
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)
