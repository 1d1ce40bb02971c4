"""
Pauli strings with a unit phase, and their dense operators.

A `PauliString` is a label such as "XZIY" (one letter per qubit, qubit 1 first) together
with a phase in {+1, -1, +i, -i}. Products, commutation and Pauli decomposition of dense
operators are provided here.
"""

# allows user classes in type hints
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from dickelab.core.operator import MAX_QUBITS, Operator, check_n_qubits

PHASE_TOL = 1e-12
UNIT_PHASES = (1 + 0j, -1 + 0j, 1j, -1j)


def _read_only(matrix: list[list[complex]]) -> np.ndarray:
    arr = np.array(matrix, dtype=complex)
    arr.setflags(write=False)
    return arr


PAULI_MATRICES = {
    "I": _read_only([[1, 0], [0, 1]]),
    "X": _read_only([[0, 1], [1, 0]]),
    "Y": _read_only([[0, -1j], [1j, 0]]),
    "Z": _read_only([[1, 0], [0, -1]]),
}

# single-site products: (a, b) -> (phase, label) with a.b = phase * label
_PRODUCT_TABLE = {
    ("I", b): (1 + 0j, b) for b in "IXYZ"
} | {
    (a, "I"): (1 + 0j, a) for a in "XYZ"
} | {
    (a, a): (1 + 0j, "I") for a in "XYZ"
} | {
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


def nearest_unit_phase(value: complex, tol: float = PHASE_TOL) -> complex:
    """Snaps `value` onto {+1, -1, +i, -i}; raises ValueError if further than `tol`."""
    phase = min(UNIT_PHASES, key=lambda p: abs(value - p))
    if abs(value - phase) > tol:
        raise ValueError(f"phase {value!r} is not one of +1, -1, +i, -i")
    return phase


@dataclass(frozen=True, kw_only=True)
class PauliString:
    """
    Attributes: Attributes
        labels (str): One of I, X, Y, Z per qubit, qubit 1 first.
        phase (complex): Unit phase in {+1, -1, +i, -i}. Defaults to +1.
    """

    labels: str
    phase: complex = 1 + 0j

    def __post_init__(self):
        labels = str(self.labels).upper()
        if not labels or set(labels) - set("IXYZ"):
            raise ValueError(f"invalid Pauli labels {self.labels!r}")
        if len(labels) > MAX_QUBITS:
            raise ValueError(f"Pauli string longer than {MAX_QUBITS} qubits")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "phase", nearest_unit_phase(complex(self.phase)))

    @classmethod
    def from_sites(
        cls, n_qubits: int, sites: dict[int, str], phase: complex = 1
    ) -> PauliString:
        """
        Builds a string from 1-based site assignments, identity elsewhere.

        Example:
            `PauliString.from_sites(4, {1: "Z", 3: "Z"})` is `ZIZI`.
        """
        check_n_qubits(n_qubits)
        labels = ["I"] * n_qubits
        for site, label in sites.items():
            if not 1 <= site <= n_qubits:
                raise ValueError(f"site {site} outside 1..{n_qubits}")
            labels[site - 1] = label
        return cls(labels="".join(labels), phase=phase)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return sum(label != "I" for label in self.labels)

    @property
    def is_hermitian(self) -> bool:
        return self.phase.imag == 0

    def __mul__(self, other: PauliString) -> PauliString:
        if not isinstance(other, PauliString):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )
        phase = self.phase * other.phase
        labels = []
        for a, b in zip(self.labels, other.labels):
            site_phase, label = _PRODUCT_TABLE[(a, b)]
            phase *= site_phase
            labels.append(label)
        return PauliString(labels="".join(labels), phase=phase)

    def __neg__(self) -> PauliString:
        return PauliString(labels=self.labels, phase=-self.phase)

    def commutes_with(self, other: PauliString) -> bool:
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )
        clashes = sum(
            a != "I" and b != "I" and a != b for a, b in zip(self.labels, other.labels)
        )
        return clashes % 2 == 0

    def __str__(self) -> str:
        sign = {1 + 0j: "+", -1 + 0j: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return f"{sign}{self.labels}"


def pauli_string_to_operator(p: PauliString, n_qubits: int | None = None) -> Operator:
    """
    Dense operator of a Pauli string. The Hermitian flag is set iff the phase is real.

    Raises:
        ValueError: If `n_qubits` is given and differs from the string length.
    """
    if n_qubits is not None and n_qubits != p.n_qubits:
        raise ValueError(
            f"Pauli string {p} has {p.n_qubits} sites, expected {n_qubits}"
        )
    matrix = reduce(np.kron, (PAULI_MATRICES[label] for label in p.labels))
    return Operator(n_qubits=p.n_qubits, entries=p.phase * matrix, hermitian=p.is_hermitian)


def pauli_decomposition(op: Operator, atol: float = 0.0) -> dict[str, complex]:
    """
    Coefficients c_P = Tr(P M) / 2^n of M = sum_P c_P P over all 4^n Pauli labels.

    Only coefficients with modulus above `atol` are returned; with the default every
    non-zero coefficient is kept.
    """
    coefficients = {}
    for letters in product("IXYZ", repeat=op.n_qubits):
        labels = "".join(letters)
        matrix = reduce(np.kron, (PAULI_MATRICES[label] for label in labels))
        # Pauli matrices are Hermitian, so Tr(P M) is the entrywise sum of conj(P) * M
        coefficient = complex(np.sum(matrix.conj() * op.entries)) / op.dim
        if abs(coefficient) > atol:
            coefficients[labels] = coefficient
    return coefficients
