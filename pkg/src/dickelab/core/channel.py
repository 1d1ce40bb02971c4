"""
Kraus-form quantum channels.

A `KrausChannel` stores its operators and validates completeness, sum_m K_m^dagger K_m = 1,
to 1e-10 when it is built.
"""

# allows user classes in type hints
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from dickelab.core.operator import DensityMatrix, Operator, check_n_qubits
from dickelab.core.pauli import PauliString, pauli_string_to_operator

COMPLETENESS_TOL = 1e-10
CHOI_TOL = 1e-12


@dataclass(frozen=True, kw_only=True, eq=False)
class KrausChannel:
    """
    Completely positive trace-preserving map in Kraus form.

    Attributes: Attributes
        n_qubits (int): Register size.
        kraus_ops (tuple[Operator, ...]): Kraus operators K_m.
        name (str): Label used in reports and log messages.
    """

    n_qubits: int
    kraus_ops: tuple[Operator, ...] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        check_n_qubits(self.n_qubits)
        kraus_ops = tuple(self.kraus_ops)
        if not kraus_ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in kraus_ops:
            if k.n_qubits != self.n_qubits:
                raise ValueError(
                    f"Kraus operator on {k.n_qubits} qubits in a {self.n_qubits}-qubit channel"
                )
        object.__setattr__(self, "kraus_ops", kraus_ops)

        error = self.completeness_error()
        if error > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus operators of {self.name or 'channel'} violate completeness by {error:.3e}"
            )

    @classmethod
    def identity(cls, n_qubits: int) -> KrausChannel:
        return cls(n_qubits=n_qubits, kraus_ops=(Operator.identity(n_qubits),), name="identity")

    @classmethod
    def from_pauli_terms(
        cls,
        n_qubits: int,
        terms: Sequence[tuple[float, PauliString]],
        name: str = "",
    ) -> KrausChannel:
        """
        Pauli channel rho -> sum_m w_m P_m rho P_m with Kraus operators sqrt(w_m) P_m.

        Args:
            terms: (weight, Pauli string) pairs; weights must be non-negative.
        """
        kraus_ops = []
        for weight, pauli in terms:
            if weight < 0:
                raise ValueError(f"negative weight {weight} for {pauli}")
            op = sqrt(weight) * pauli_string_to_operator(pauli, n_qubits)
            kraus_ops.append(op)
        return cls(n_qubits=n_qubits, kraus_ops=tuple(kraus_ops), name=name)

    def completeness_error(self) -> float:
        total = sum(k.entries.conj().T @ k.entries for k in self.kraus_ops)
        return float(np.max(np.abs(total - np.eye(2**self.n_qubits))))

    def then(self, other: KrausChannel) -> KrausChannel:
        """Composite channel applying `self` first and `other` second."""
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )
        kraus_ops = tuple(b @ a for b in other.kraus_ops for a in self.kraus_ops)
        name = f"{other.name or 'channel'} . {self.name or 'channel'}"
        return KrausChannel(n_qubits=self.n_qubits, kraus_ops=kraus_ops, name=name)

    def conjugated(self, unitary: Operator) -> KrausChannel:
        """The channel rho -> U Phi(U^dagger rho U) U^dagger."""
        kraus_ops = tuple(k.conjugate_by(unitary) for k in self.kraus_ops)
        return KrausChannel(n_qubits=self.n_qubits, kraus_ops=kraus_ops, name=self.name)

    def choi(self) -> np.ndarray:
        """Choi matrix sum_ij |i><j| (x) Phi(|i><j|)."""
        dim = 2**self.n_qubits
        choi = np.zeros((dim * dim, dim * dim), dtype=complex)
        for k in self.kraus_ops:
            vec = k.entries.T.reshape(-1)
            choi += np.outer(vec, vec.conj())
        return choi

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        return apply_channel(rho, self)


def apply_channel(rho: DensityMatrix, channel: KrausChannel) -> DensityMatrix:
    """
    Returns sum_m K_m rho K_m^dagger, symmetrized to exact Hermiticity.

    The output keeps the `check` setting of the input.

    Raises:
        ValueError: On a register mismatch or incomplete Kraus set.
    """
    if rho.n_qubits != channel.n_qubits:
        raise ValueError(
            f"dimension mismatch: state on {rho.n_qubits}, channel on {channel.n_qubits} qubits"
        )
    error = channel.completeness_error()
    if error > COMPLETENESS_TOL:
        raise ValueError(f"Kraus operators violate completeness by {error:.3e}")

    out = np.zeros_like(rho.entries)
    for k in channel.kraus_ops:
        out += k.entries @ rho.entries @ k.entries.conj().T
    out = (out + out.conj().T) / 2
    return DensityMatrix(n_qubits=rho.n_qubits, entries=out, check=rho.check)


def channels_equal(a: KrausChannel, b: KrausChannel, atol: float = CHOI_TOL) -> bool:
    """Channel equality through the Choi matrices, entrywise within `atol`."""
    if a.n_qubits != b.n_qubits:
        return False
    return bool(np.max(np.abs(a.choi() - b.choi())) <= atol)
