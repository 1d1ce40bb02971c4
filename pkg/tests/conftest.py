import numpy as np
import pytest

from dickelab.core.operator import DensityMatrix
from dickelab.state.dicke import phased_dicke4, xi_state


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> DensityMatrix:
    dim = 2**n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(n_qubits=n_qubits, entries=rho / np.trace(rho).real)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def dicke4():
    return phased_dicke4()


@pytest.fixture
def xi():
    return xi_state()


@pytest.fixture
def rho_random(rng):
    return random_density_matrix(4, rng)
