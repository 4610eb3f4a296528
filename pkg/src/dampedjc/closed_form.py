"""Closed-form amplitudes and concurrence for both initial-state families.

Because the two atom-cavity pairs are independent, everything reduces to the
single-pair problem of one excited atom in its own vacuum cavity.  In the
frame rotating at the atomic frequency its survival amplitude ``c_e`` and
photon amplitude ``c_p`` are

    c_e(T) = exp(-T*xi_plus/4) * [cosh(u) - xi_minus*(T/4)*sinhc(u)]
    c_p(T) = -i * exp(-T*xi_plus/4) * T * sinhc(u),    u = T*eta_minus/4

with ``sinhc(z) = sinh(z)/z``.  The PSI-family amplitudes are ``c_e`` and
``c_p`` weighted by cos(alpha)/sin(alpha); the PHI-family amplitudes are
tensor products of two independent pair evolutions.  Both reproductions are
validated against the numerical oracle in the test suite.

The ``*_printed`` variants are verbatim transcriptions of the originally
printed formulas, kept callable for audit.  Their known defects, and the
corrections adopted here, are documented in RECONCILIATION.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .model import Family, InitialState, ModelParams, SpectralQuantities

__all__ = [
    "AmplitudeSet",
    "ConcurrenceSample",
    "pair_amplitudes",
    "psi_amplitudes",
    "psi_concurrence",
    "psi_concurrence_printed",
    "resonant_psi_concurrence",
    "phi_amplitudes",
    "phi_amplitudes_printed",
    "phi_concurrence",
    "phi_concurrence_printed",
    "concurrence_curve",
]


@dataclass(frozen=True)
class AmplitudeSet:
    """Time-dependent coefficients of the evolved state in the sector basis.

    PSI: (x1..x4) over |eg00>, |ge00>, |gg10>, |gg01>.
    PHI: (x1..x5) over |ee00>, |gg11>, |eg01>, |ge10>, |gg00>.

    Phases refer to the excitation-number rotating frame and are
    convention-dependent; moduli are frame-invariant.
    """

    family: Family
    x: tuple[complex, ...]

    def norm_sq(self) -> float:
        """Survival probability sum(|x_i|^2), i.e. the trace of rho_AB."""
        return float(sum(abs(v) ** 2 for v in self.x))


@dataclass(frozen=True)
class ConcurrenceSample:
    """Concurrence at one instant.

    ``value = max(raw, 0)``; the unclamped ``raw`` is kept because
    sudden-death detection needs its sign.
    """

    T: float
    value: float
    raw: float


def _sinhc(z: np.ndarray) -> np.ndarray:
    """sinh(z)/z, continued smoothly through z = 0.

    The series branch keeps the critical-damping line (eta -> 0 at
    kappa = 4, delta = 0) usable without caller-side special cases.
    """
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1.0e-6
    safe = np.where(small, 1.0, z)
    series = 1.0 + z * z / 6.0 + z**4 / 120.0
    return np.where(small, series, np.sinh(safe) / safe)


def _pair(spectral: SpectralQuantities, T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Single-pair amplitudes (c_e, c_p) for an array of times."""
    T = np.asarray(T, dtype=float)
    u = 0.25 * T * spectral.eta_minus
    s = _sinhc(u)
    damp = np.exp(-0.25 * T * spectral.xi_plus)
    c_e = damp * (np.cosh(u) - 0.25 * spectral.xi_minus * T * s)
    c_p = -1j * damp * T * s
    return c_e, c_p


def pair_amplitudes(
    params: ModelParams, T: float, spectral: SpectralQuantities | None = None
) -> tuple[complex, complex]:
    """Amplitudes of one excited atom in its own lossy vacuum cavity.

    Returns ``(c_e, c_p)``: the excited-atom survival amplitude and the
    emitted-photon amplitude at dimensionless time T, in the frame rotating
    at the atomic frequency.  ``spectral`` may override the derived
    constants (branch audits, verbatim-eta audits).
    """
    if spectral is None:
        spectral = model.derive(params)
    c_e, c_p = _pair(spectral, T)
    return complex(c_e), complex(c_p)


# ---------------------------------------------------------------------------
# PSI family: cos(a)|eg00> + sin(a)|ge00>
# ---------------------------------------------------------------------------


def psi_amplitudes(
    params: ModelParams,
    alpha: float,
    T: float,
    spectral: SpectralQuantities | None = None,
) -> AmplitudeSet:
    """Four amplitudes of the single-excitation family at time T >= 0.

    x1/x2 = cos(alpha)/sin(alpha) for all T since both atoms evolve
    identically; x3, x4 carry the emitted-photon amplitude.
    """
    c_e, c_p = pair_amplitudes(params, T, spectral)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return AmplitudeSet(Family.PSI, (ca * c_e, sa * c_e, ca * c_p, sa * c_p))


def psi_concurrence(
    params: ModelParams,
    alpha: float,
    T: float,
    renormalize: bool = False,
    spectral: SpectralQuantities | None = None,
) -> ConcurrenceSample:
    """Atom-atom concurrence 2*|x1*conj(x2)| for the PSI family.

    The raw value is a product of moduli and therefore never negative:
    this family shows no sudden death.  With ``renormalize`` the reduced
    density matrix is scaled to unit trace first (concurrence is
    homogeneous, so this divides by sum |x_i|^2).
    """
    c_e, c_p = pair_amplitudes(params, T, spectral)
    raw = abs(c_e) ** 2 * abs(math.sin(2.0 * alpha))
    if renormalize:
        raw /= abs(c_e) ** 2 + abs(c_p) ** 2
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


def psi_concurrence_printed(
    params: ModelParams,
    alpha: float,
    T: float,
    verbatim_eta: bool = False,
) -> ConcurrenceSample:
    """Verbatim transcription of the printed PSI concurrence expression,

        raw = (1/4) * exp(-T*(xi+ + xi- + eta+ + eta-)/4) * M+ * M- * sin(2a)

    with ``zeta = exp(T*eta/2) - 1`` and ``M = 1 + exp(T*eta/2) -
    zeta*xi/eta``.  Audit variant: singular where eta = 0 (kappa = 4 at
    delta = 0), and negative for sin(2a) < 0.  Matches
    :func:`psi_concurrence` for alpha in [0, pi/2] once eta is read as
    sqrt(xi**2 - 16) (``verbatim_eta=False``).
    """
    spectral = model.derive_verbatim(params) if verbatim_eta else model.derive(params)
    xp, xm = spectral.xi_plus, spectral.xi_minus
    ep, em = spectral.eta_plus, spectral.eta_minus
    zp = np.exp(0.5 * T * ep) - 1.0
    zm = np.exp(0.5 * T * em) - 1.0
    mp = 1.0 + np.exp(0.5 * T * ep) - zp * xp / ep
    mm = 1.0 + np.exp(0.5 * T * em) - zm * xm / em
    raw = 0.25 * np.exp(-0.25 * T * (xp + xm + ep + em)) * mp * mm * math.sin(2.0 * alpha)
    raw = float(np.real(raw))
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


def resonant_psi_concurrence(
    kappa: float, alpha: float, T: float, renormalize: bool = False
) -> ConcurrenceSample:
    """PSI concurrence on resonance (delta = 0), raw = f(T)/4 with

        f(T) = exp(-T*(kappa+eta)/2) * {1 + kappa/eta
               + exp(T*eta/2) * (1 - kappa/eta)}^2 * sin(2*alpha)

    and ``eta = sqrt(kappa**2 - 16)``.  Evaluated through the algebraically
    identical even form ``exp(-kappa*T/2) * [cosh(T*eta/4) -
    kappa*(T/4)*sinhc(T*eta/4)]^2``, which passes smoothly through the
    critically damped point kappa = 4 where eta = 0.  The result is real for
    real inputs; only that forced real part is taken.
    """
    if kappa < 0.0:
        raise ValueError(f"kappa must be non-negative, got {kappa}")
    eta = np.sqrt(complex(kappa * kappa - 16.0, 0.0))
    u = 0.25 * T * eta
    bracket = np.cosh(u) - kappa * 0.25 * T * _sinhc(u)
    raw = math.exp(-0.5 * kappa * T) * float(np.real(bracket * bracket)) * math.sin(2.0 * alpha)
    if renormalize:
        c_e, c_p = pair_amplitudes(ModelParams.from_rates(gamma=kappa), T)
        raw /= abs(c_e) ** 2 + abs(c_p) ** 2
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


# ---------------------------------------------------------------------------
# PHI family: cos(a)|ee00> + sin(a)|gg00>
# ---------------------------------------------------------------------------


def phi_amplitudes(
    params: ModelParams,
    alpha: float,
    T: float,
    spectral: SpectralQuantities | None = None,
) -> AmplitudeSet:
    """Five amplitudes of the double-excitation family at time T >= 0.

    The |ee00> component evolves as the tensor product of two independent
    single-pair problems, so

        x1 = cos(a)*c_e^2,  x2 = cos(a)*c_p^2,  x3 = x4 = cos(a)*c_e*c_p,

    while |gg00> is decoupled from the interaction: x5 = sin(a) up to a
    frame phase (|x5| = |sin(a)| for all T).
    """
    c_e, c_p = pair_amplitudes(params, T, spectral)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return AmplitudeSet(
        Family.PHI,
        (ca * c_e * c_e, ca * c_p * c_p, ca * c_e * c_p, ca * c_e * c_p, complex(sa)),
    )


def phi_concurrence(
    params: ModelParams,
    alpha: float,
    T: float,
    renormalize: bool = False,
    spectral: SpectralQuantities | None = None,
) -> ConcurrenceSample:
    """Atom-atom concurrence for the PHI family.

    raw = 2*|x1*conj(x5)| - 2*|x3*x4|: the |ee>-|gg> coherence against the
    geometric mean of the one-excitation populations.  This is the X-state
    concurrence of the partial-trace reduced density matrix and can go
    negative, which is exactly the sudden-death window.  Normalized so that
    C(0) = |sin(2*alpha)|.
    """
    c_e, c_p = pair_amplitudes(params, T, spectral)
    ca, sa = math.cos(alpha), math.sin(alpha)
    ce2, cp2 = abs(c_e) ** 2, abs(c_p) ** 2
    raw = 2.0 * abs(ca) * ce2 * (abs(sa) - abs(ca) * cp2)
    if renormalize:
        raw /= ca * ca * (ce2 + cp2) ** 2 + sa * sa
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


def phi_amplitudes_printed(
    params: ModelParams,
    alpha: float,
    T: float,
    verbatim_eta: bool = False,
) -> AmplitudeSet:
    """Verbatim transcription of the printed five-amplitude solution.

    Audit variant; phases follow the original frame (x1..x4 carry
    exp(-i*nu*T/g) factors, x5 carries exp(2i*omega*T/g)).  Known defects
    (see RECONCILIATION.md): the x1 bracket is misprinted and fails both
    the T = 0 normalization away from kappa = 0 and the dynamics
    everywhere; x2, x3, x4, x5 agree with :func:`phi_amplitudes` in
    modulus.  Singular where eta = 0.
    """
    spectral = model.derive_verbatim(params) if verbatim_eta else model.derive(params)
    xm, em = spectral.xi_minus, spectral.eta_minus
    kappa = params.kappa
    nu_g = params.nu / params.g
    omega_g = params.omega / params.g
    ca, sa = math.cos(alpha), math.sin(alpha)
    zm = np.exp(0.5 * T * em) - 1.0
    phase = np.exp(-0.5 * T * (kappa + 2.0j * nu_g + em))
    bracket1 = (
        -8.0 * (2.0 + zm) ** 2
        - zm * (2.0 + zm) * em * xm
        + (1.0 + (1.0 + zm) ** 2) * zm * zm
    )
    x1 = (1.0 / (2.0 * em * em)) * ca * phase * bracket1
    x2 = -4.0 * phase * (zm / em) ** 2 * ca
    bracket3 = -zm * zm * xm + (np.exp(T * em) - 1.0) * em
    x3 = (-1j / (em * em)) * ca * phase * bracket3
    x5 = np.exp(2.0j * T * omega_g) * sa
    return AmplitudeSet(Family.PHI, (complex(x1), complex(x2), complex(x3), complex(x3), complex(x5)))


def phi_concurrence_printed(
    params: ModelParams,
    alpha: float,
    T: float,
    verbatim_eta: bool = False,
) -> ConcurrenceSample:
    """Verbatim transcription of the printed PHI concurrence max{F+G, 0},

        F = 32*exp(-kappa*T)*cos(a)^2*sinh(T*eta+/4)*sinh(T*eta-/4)
            * Delta+ * Delta- / (eta+*eta-)^2
        G = 2*sqrt(Lambda+*Lambda- * sin(a)^2*cos(a)^2 / (eta+*eta-)^2)
            * exp(-T*kappa/2)

    with Delta = -+cosh(T*eta/4)*eta +- sinh(T*eta/4)*xi and
    Lambda = 8 + sinh(T*eta/2)*eta*xi - cosh(T*eta/2)*(xi^2 - 8).

    With ``verbatim_eta=False`` (eta read as sqrt(xi**2 - 16)) this is
    algebraically identical to :func:`phi_concurrence` for alpha in
    [0, pi/2]: F = -2*|x3*x4| and G = 2*|x1*conj(x5)|.  With
    ``verbatim_eta=True`` it fails the C(0) = sin(2a) normalization for
    kappa outside {0, 1}; see RECONCILIATION.md.  Only the algebraically
    forced real part is taken.
    """
    spectral = model.derive_verbatim(params) if verbatim_eta else model.derive(params)
    xp, xm = spectral.xi_plus, spectral.xi_minus
    ep, em = spectral.eta_plus, spectral.eta_minus
    kappa = params.kappa
    ca, sa = math.cos(alpha), math.sin(alpha)
    shp, shm = np.sinh(0.25 * T * ep), np.sinh(0.25 * T * em)
    chp, chm = np.cosh(0.25 * T * ep), np.cosh(0.25 * T * em)
    delta_p = -chp * ep + shp * xp
    delta_m = chm * em - shm * xm
    f_term = (
        32.0
        * np.exp(-kappa * T)
        * ca**2
        * shp
        * shm
        * delta_p
        * delta_m
        / (ep * em) ** 2
    )
    lam_p = 8.0 + np.sinh(0.5 * T * ep) * ep * xp - np.cosh(0.5 * T * ep) * (xp * xp - 8.0)
    lam_m = 8.0 + np.sinh(0.5 * T * em) * em * xm - np.cosh(0.5 * T * em) * (xm * xm - 8.0)
    g_term = 2.0 * np.sqrt(lam_p * lam_m * (sa * ca) ** 2 / (ep * em) ** 2 + 0.0j) * np.exp(
        -0.5 * kappa * T
    )
    raw = float(np.real(f_term + g_term))
    return ConcurrenceSample(T=float(T), value=max(raw, 0.0), raw=raw)


# ---------------------------------------------------------------------------
# Vectorized curves (used by the analysis and CLI layers)
# ---------------------------------------------------------------------------


def concurrence_curve(
    params: ModelParams,
    initial: InitialState,
    T: np.ndarray,
    renormalize: bool = False,
    spectral: SpectralQuantities | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Unclamped concurrence and survival probability on a time grid.

    Returns ``(raw, norm)`` arrays of the same shape as T, where norm is
    sum(|x_i|^2).  Vectorized equivalent of the per-sample operations.
    """
    if spectral is None:
        spectral = model.derive(params)
    c_e, c_p = _pair(spectral, T)
    ce2 = np.abs(c_e) ** 2
    cp2 = np.abs(c_p) ** 2
    ca, sa = math.cos(initial.alpha), math.sin(initial.alpha)
    if initial.family is Family.PSI:
        raw = ce2 * abs(math.sin(2.0 * initial.alpha))
        norm = ce2 + cp2
    else:
        raw = 2.0 * abs(ca) * ce2 * (abs(sa) - abs(ca) * cp2)
        norm = ca * ca * (ce2 + cp2) ** 2 + sa * sa
    if renormalize:
        raw = raw / norm
    return raw, norm
