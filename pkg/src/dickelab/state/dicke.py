"""
Builders for the reference states: the 4-qubit phased Dicke state, the pre-transformation
state xi, and symmetric Dicke states.
"""

from itertools import combinations
from math import comb, sqrt

import numpy as np

from dickelab.core.operator import StateVector, check_n_qubits

# amplitudes in units of 1/sqrt(6)
PHASED_DICKE4_TERMS = {
    "0011": 1,
    "1100": 1,
    "0110": 1,
    "1001": 1,
    "0101": -1,
    "1010": -1,
}
XI_TERMS = {
    "0010": 1,
    "1000": -1,
    "0111": 2,
}


def superposition(terms: dict[str, complex], scale: float) -> StateVector:
    """State sum_b scale * terms[b] |b> over bitstrings of equal length."""
    n_qubits = len(next(iter(terms)))
    amplitudes = np.zeros(2**n_qubits, dtype=complex)
    for bits, amplitude in terms.items():
        if len(bits) != n_qubits:
            raise ValueError(f"bitstring {bits!r} does not have {n_qubits} qubits")
        amplitudes[int(bits, 2)] = scale * amplitude
    return StateVector(n_qubits=n_qubits, amplitudes=amplitudes)


def phased_dicke4() -> StateVector:
    """
    The phased Dicke state with two excitations on four qubits,
    (|0011> + |1100> + |0110> + |1001> - |0101> - |1010>) / sqrt(6).
    """
    return superposition(PHASED_DICKE4_TERMS, 1 / sqrt(6))


def xi_state() -> StateVector:
    """(|0010> - |1000> + 2|0111>) / sqrt(6), mapped onto `phased_dicke4` by the Dicke circuit."""
    return superposition(XI_TERMS, 1 / sqrt(6))


def symmetric_dicke(n: int, k_excitations: int) -> StateVector:
    """Equal superposition of all n-bit strings of Hamming weight `k_excitations`."""
    check_n_qubits(n)
    if not 0 <= k_excitations <= n:
        raise ValueError(f"k_excitations must be within 0..{n}, got {k_excitations}")
    terms = {}
    for ones in combinations(range(n), k_excitations):
        terms["".join("1" if q in ones else "0" for q in range(n))] = 1
    return superposition(terms, 1 / sqrt(comb(n, k_excitations)))
