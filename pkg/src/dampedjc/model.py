"""Physical parameters, spectral constants, and initial states.

The system is a pair of identical two-level atoms, each coupled with
strength ``g`` to its own single-mode vacuum cavity, with an upper-level
decay rate ``gamma`` modelled as the imaginary energy -i*gamma/2 of the
excited state.  There is no interaction between the two atom-cavity pairs.

Conventions used throughout the package:

* time is the dimensionless ``T = g*t``; raw seconds never appear,
* ``kappa = gamma/g`` and ``delta/g = (nu - omega)/g`` are the only rate
  combinations observables depend on,
* complex square roots are principal-branch (cut on the negative real
  axis, ``sqrt(-1) = +1j``).  All observables are even in the branch
  choice, which the test suite checks explicitly.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass


class Family(enum.Enum):
    """Which pair of Bell states spans the initial two-atom superposition."""

    PSI = "psi"  # cos(a)|eg> + sin(a)|ge>: one shared excitation
    PHI = "phi"  # cos(a)|ee> + sin(a)|gg>: double excitation / ground


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the two-cavity system.

    Attributes
    ----------
    g : atom-field coupling strength, > 0; sets the frequency unit.
    omega : atomic transition frequency parameter.
    nu : cavity field frequency.
    gamma : decay rate of the upper level to levels outside the qubit, >= 0.

    All four share the same (arbitrary) frequency unit.  Instances are
    immutable and safe to share between threads.
    """

    g: float = 1.0
    omega: float = 0.0
    nu: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        for name in ("g", "omega", "nu", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.g <= 0.0:
            raise ValueError(f"g must be positive, got {self.g}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")

    @classmethod
    def from_rates(cls, gamma: float = 0.0, delta: float = 0.0, g: float = 1.0) -> "ModelParams":
        """Build params from the dimensionless rates gamma/g and delta/g.

        Only the differences delta = nu - omega matter for observables, so
        omega is pinned to 0 and nu to delta*g.
        """
        return cls(g=g, omega=0.0, nu=delta * g, gamma=gamma * g)

    @property
    def delta(self) -> float:
        """Detuning nu - omega, in the same units as g."""
        return self.nu - self.omega

    @property
    def kappa(self) -> float:
        """Dimensionless decay rate gamma/g."""
        return self.gamma / self.g

    @property
    def detuning(self) -> float:
        """Dimensionless detuning (nu - omega)/g."""
        return self.delta / self.g


@dataclass(frozen=True)
class SpectralQuantities:
    """Complex constants governing the closed-form time dependence.

    ``xi_plus/minus = kappa +- 2i*delta/g`` and ``eta_plus/minus`` is a
    square root of ``xi**2 - 16``.  Every downstream formula depends on
    eta only through even combinations (cosh, sinh(z)/z), so flipping the
    sign of either root leaves all observables unchanged.
    """

    xi_plus: complex
    xi_minus: complex
    eta_plus: complex
    eta_minus: complex

    def flipped(self, plus: bool = False, minus: bool = False) -> "SpectralQuantities":
        """Copy with the sign of eta_plus and/or eta_minus reversed.

        Used by the branch-invariance checks; observables computed from the
        flipped copy must be identical.
        """
        return SpectralQuantities(
            xi_plus=self.xi_plus,
            xi_minus=self.xi_minus,
            eta_plus=-self.eta_plus if plus else self.eta_plus,
            eta_minus=-self.eta_minus if minus else self.eta_minus,
        )


def _principal_sqrt(z: complex) -> complex:
    # +0.0 forces a consistent side of the branch cut when the imaginary
    # part is a signed zero (delta = 0 makes xi**2 - 16 a negative real).
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


def derive(params: ModelParams) -> SpectralQuantities:
    """Spectral constants for the given parameters.

    eta is taken as the principal square root of ``xi**2 - 16``; this is the
    reading under which the general amplitudes reduce to the resonant
    special case at delta = 0 and agree with direct numerical integration
    (see RECONCILIATION.md).  Finite inputs always map to finite outputs.
    """
    kappa = params.kappa
    d = params.detuning
    xi_plus = complex(kappa, 2.0 * d + 0.0)
    xi_minus = complex(kappa, -2.0 * d + 0.0)
    return SpectralQuantities(
        xi_plus=xi_plus,
        xi_minus=xi_minus,
        eta_plus=_principal_sqrt(xi_plus * xi_plus - 16.0),
        eta_minus=_principal_sqrt(xi_minus * xi_minus - 16.0),
    )


def derive_verbatim(params: ModelParams) -> SpectralQuantities:
    """Spectral constants with ``eta = sqrt(xi - 16)``, the original printed
    general definition.

    Audit use only.  It coincides with :func:`derive` where xi equals xi**2
    (kappa in {0, 1} at delta = 0) and disagrees with the numerical dynamics
    everywhere else; see RECONCILIATION.md.
    """
    kappa = params.kappa
    d = params.detuning
    xi_plus = complex(kappa, 2.0 * d + 0.0)
    xi_minus = complex(kappa, -2.0 * d + 0.0)
    return SpectralQuantities(
        xi_plus=xi_plus,
        xi_minus=xi_minus,
        eta_plus=_principal_sqrt(xi_plus - 16.0),
        eta_minus=_principal_sqrt(xi_minus - 16.0),
    )


@dataclass(frozen=True)
class InitialState:
    """Two-atom pure initial state, both cavities in vacuum.

    PSI encodes cos(alpha)|eg> + sin(alpha)|ge>, PHI encodes
    cos(alpha)|ee> + sin(alpha)|gg>.  Any finite real alpha is accepted;
    the physically distinct range is [0, pi/2].  The encoded atomic state
    has unit norm for every alpha.
    """

    family: Family
    alpha: float

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            raise ValueError(f"unknown family {self.family!r}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
