"""Entanglement dynamics of two atoms in independent lossy Jaynes-Cummings
cavities: closed-form amplitudes and concurrence, an independent numerical
oracle, sudden-death analysis, and parameter sweeps."""

from .analysis import (
    AxisSpec,
    ComparisonCell,
    ConcurrenceTrace,
    SdeReport,
    Source,
    SweepGrid,
    compare_closed_oracle,
    detect_sde,
    sde_interval_vs_alpha,
    sweep,
    time_average,
    trace,
)
from .closed_form import (
    AmplitudeSet,
    ConcurrenceSample,
    concurrence_curve,
    pair_amplitudes,
    phi_amplitudes,
    phi_amplitudes_printed,
    phi_concurrence,
    phi_concurrence_printed,
    psi_amplitudes,
    psi_concurrence,
    psi_concurrence_printed,
    resonant_psi_concurrence,
)
from .model import (
    Family,
    InitialState,
    ModelParams,
    SpectralQuantities,
    derive,
    derive_verbatim,
)
from .oracle import (
    PHI_BASIS,
    PSI_BASIS,
    HamiltonianSector,
    StateVector,
    build_sector,
    initial_state_vector,
    integrate,
    integrate_trajectory,
    partial_trace_fields,
    step_halving_error,
    wootters_concurrence,
    x_state_concurrence,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSet",
    "AxisSpec",
    "ComparisonCell",
    "ConcurrenceSample",
    "ConcurrenceTrace",
    "Family",
    "HamiltonianSector",
    "InitialState",
    "ModelParams",
    "PHI_BASIS",
    "PSI_BASIS",
    "SdeReport",
    "Source",
    "SpectralQuantities",
    "StateVector",
    "SweepGrid",
    "build_sector",
    "compare_closed_oracle",
    "concurrence_curve",
    "derive",
    "derive_verbatim",
    "detect_sde",
    "initial_state_vector",
    "integrate",
    "integrate_trajectory",
    "pair_amplitudes",
    "partial_trace_fields",
    "phi_amplitudes",
    "phi_amplitudes_printed",
    "phi_concurrence",
    "phi_concurrence_printed",
    "psi_amplitudes",
    "psi_concurrence",
    "psi_concurrence_printed",
    "resonant_psi_concurrence",
    "sde_interval_vs_alpha",
    "step_halving_error",
    "sweep",
    "time_average",
    "trace",
    "wootters_concurrence",
    "x_state_concurrence",
    "__version__",
]
