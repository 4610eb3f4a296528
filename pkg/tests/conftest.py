import math

import numpy as np
import pytest

from dampedjc import compare_closed_oracle

# Reference comparison grid shared by several acceptance criteria.
KAPPAS = (0.0, 0.5, 1.0)
DELTAS = (0.0, 1.0, -1.0, 3.0, -3.0, 5.0, -5.0)
ALPHAS = (math.pi / 6, math.pi / 4, math.pi / 3)
T_MAX = 5.0 * math.pi
N_SAMPLES = 2000


@pytest.fixture(scope="session")
def comparison_cells():
    """Closed form vs oracle over the full reference grid (computed once)."""
    return compare_closed_oracle(
        kappas=KAPPAS, deltas=DELTAS, alphas=ALPHAS, T_max=T_MAX, n_samples=N_SAMPLES
    )


def random_x_state(rng: np.random.Generator) -> np.ndarray:
    """Valid X-shaped density matrix with one anti-diagonal coherence pair."""
    populations = rng.dirichlet(np.ones(4))
    rho = np.diag(populations).astype(complex)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    strength = rng.uniform(0.0, 1.0)
    if rng.integers(0, 2) == 0:
        c = strength * math.sqrt(populations[0] * populations[3])
        rho[0, 3] = c * phase
        rho[3, 0] = np.conj(rho[0, 3])
    else:
        c = strength * math.sqrt(populations[1] * populations[2])
        rho[1, 2] = c * phase
        rho[2, 1] = np.conj(rho[1, 2])
    return rho
