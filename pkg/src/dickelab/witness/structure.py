"""
Structure-factor observables.

The structure factor S_ab(k) = sum_{i<j} cos(k (i - j)) s^a_i s^b_j sums two-site Pauli
correlators over all pairs with a cosine weight. The unsymmetrized form uses
exp(i k (i - j)); the two agree whenever k is a multiple of pi.
"""

import cmath
from enum import StrEnum
from functools import lru_cache
from itertools import combinations
from math import cos

import numpy as np

from dickelab.core.operator import Operator, check_n_qubits
from dickelab.core.pauli import PauliString, pauli_string_to_operator


class Axis(StrEnum):
    X = "x"
    Y = "y"
    Z = "z"


@lru_cache(maxsize=None)
def pair_correlator(alpha: Axis, beta: Axis, i: int, j: int, n: int) -> np.ndarray:
    """Read-only matrix of s^alpha_i s^beta_j on n qubits."""
    p = PauliString.from_sites(n, {i: alpha.upper(), j: beta.upper()})
    return pauli_string_to_operator(p).entries


def structure_factor(
    alpha: Axis | str,
    beta: Axis | str,
    k: float,
    n: int = 4,
    symmetrized: bool = True,
) -> Operator:
    """
    Structure factor S_{alpha beta}(k) on n qubits.

    Args:
        alpha, beta: Pauli axes "x", "y" or "z".
        k: Wave number.
        symmetrized: Cosine weights when True, exp(i k (i - j)) weights otherwise.

    Raises:
        ValueError: On an unknown axis or n < 2.
    """
    alpha, beta = Axis(alpha), Axis(beta)
    check_n_qubits(n)
    if n < 2:
        raise ValueError(f"a structure factor needs at least 2 qubits, got {n}")

    entries = np.zeros((2**n, 2**n), dtype=complex)
    for i, j in combinations(range(1, n + 1), 2):
        weight = cos(k * (i - j)) if symmetrized else cmath.exp(1j * k * (i - j))
        entries += weight * pair_correlator(alpha, beta, i, j, n)
    return Operator(n_qubits=n, entries=entries)
