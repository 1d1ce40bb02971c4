"""
Dense `StateVector`, `DensityMatrix` and `Operator` classes.

This module defines the immutable value types every other part of dickelab works on,
together with expectation values and fidelities. The computational basis is ordered with
qubit 1 as the most significant bit, so the amplitude of |q1 q2 ... qn> sits at index
`int("q1q2...qn", 2)`.
"""

# allows user classes in type hints
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

MAX_QUBITS = 8

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_TOL = 1e-10
UNITARY_TOL = 1e-10


def check_n_qubits(n_qubits: int) -> None:
    """Raises ValueError unless 1 <= n_qubits <= MAX_QUBITS."""
    if not isinstance(n_qubits, (int, np.integer)) or not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be an integer within 1..{MAX_QUBITS}, got {n_qubits}")


def frozen_array(values, shape: tuple[int, ...]) -> np.ndarray:
    """Returns a read-only complex copy of `values`, checked against `shape`."""
    arr = np.array(values, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def hermitian_deviation(matrix: np.ndarray) -> float:
    """Largest entrywise modulus of `matrix - matrix^dagger`."""
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def _n_qubits_from_dim(dim: int) -> int:
    n_qubits = int(dim).bit_length() - 1
    if dim < 2 or 2**n_qubits != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n_qubits


@dataclass(frozen=True, kw_only=True, eq=False)
class Operator:
    """
    A dense 2^n x 2^n complex operator.

    Attributes: Attributes
        n_qubits (int): Register size, 1..8.
        entries (np.ndarray): Matrix entries, stored read-only.
        hermitian (bool | None):
            Hermitian flag. Computed to 1e-12 when None, validated when True, trusted when False.
    """

    n_qubits: int
    entries: np.ndarray = field(repr=False)
    hermitian: bool | None = None

    def __post_init__(self):
        check_n_qubits(self.n_qubits)
        entries = frozen_array(self.entries, (self.dim, self.dim))
        object.__setattr__(self, "entries", entries)

        deviation = hermitian_deviation(entries)
        if self.hermitian is None:
            object.__setattr__(self, "hermitian", deviation <= HERMITIAN_TOL)
        elif self.hermitian and deviation > HERMITIAN_TOL:
            raise ValueError(f"operator flagged Hermitian deviates by {deviation:.3e}")

    @property
    def dim(self) -> int:
        """Hilbert space dimension 2^n."""
        return 2**self.n_qubits

    @classmethod
    def identity(cls, n_qubits: int) -> Operator:
        check_n_qubits(n_qubits)
        return cls(n_qubits=n_qubits, entries=np.eye(2**n_qubits), hermitian=True)

    @classmethod
    def from_matrix(cls, matrix) -> Operator:
        """Builds an operator, inferring the register size from the matrix shape."""
        matrix = np.asarray(matrix, dtype=complex)
        return cls(n_qubits=_n_qubits_from_dim(matrix.shape[0]), entries=matrix)

    def _check_compatible(self, other: Operator) -> None:
        if not isinstance(other, Operator):
            raise ValueError(f"expected Operator, got {type(other).__name__}")
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )

    def __add__(self, other: Operator) -> Operator:
        self._check_compatible(other)
        return Operator(n_qubits=self.n_qubits, entries=self.entries + other.entries)

    def __sub__(self, other: Operator) -> Operator:
        self._check_compatible(other)
        return Operator(n_qubits=self.n_qubits, entries=self.entries - other.entries)

    def __neg__(self) -> Operator:
        return Operator(n_qubits=self.n_qubits, entries=-self.entries)

    def __mul__(self, scalar: complex) -> Operator:
        if not np.isscalar(scalar):
            return NotImplemented
        return Operator(n_qubits=self.n_qubits, entries=scalar * self.entries)

    __rmul__ = __mul__

    def __matmul__(self, other: Operator) -> Operator:
        self._check_compatible(other)
        return Operator(n_qubits=self.n_qubits, entries=self.entries @ other.entries)

    def adjoint(self) -> Operator:
        return Operator(n_qubits=self.n_qubits, entries=self.entries.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        product = self.entries @ self.entries.conj().T
        return bool(np.max(np.abs(product - np.eye(self.dim))) <= tol)

    def conjugate_by(self, unitary: Operator) -> Operator:
        """Returns U A U^dagger."""
        self._check_compatible(unitary)
        return unitary @ self @ unitary.adjoint()

    def allclose(self, other: Operator, atol: float = 1e-12) -> bool:
        self._check_compatible(other)
        return bool(np.max(np.abs(self.entries - other.entries)) <= atol)


@dataclass(frozen=True, kw_only=True, eq=False)
class StateVector:
    """
    A normalized pure state on n qubits.

    Attributes: Attributes
        n_qubits (int): Register size, 1..8.
        amplitudes (np.ndarray): 2^n complex amplitudes with unit norm to 1e-12.
    """

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_n_qubits(self.n_qubits)
        amplitudes = frozen_array(self.amplitudes, (2**self.n_qubits,))
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector is not normalized, norm = {norm!r}")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> StateVector:
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if normalize:
            norm = np.linalg.norm(amplitudes)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amplitudes = amplitudes / norm
        return cls(n_qubits=_n_qubits_from_dim(len(amplitudes)), amplitudes=amplitudes)

    @classmethod
    def from_bitstring(cls, bits: str) -> StateVector:
        """Computational basis state, e.g. `from_bitstring("0110")`."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"invalid bitstring {bits!r}")
        amplitudes = np.zeros(2 ** len(bits), dtype=complex)
        amplitudes[int(bits, 2)] = 1.0
        return cls(n_qubits=len(bits), amplitudes=amplitudes)

    def amplitude(self, bits: str) -> complex:
        if len(bits) != self.n_qubits:
            raise ValueError(f"bitstring {bits!r} does not match {self.n_qubits} qubits")
        return complex(self.amplitudes[int(bits, 2)])

    def overlap(self, other: StateVector) -> complex:
        """Returns <self|other>."""
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self, check: bool = True) -> DensityMatrix:
        return DensityMatrix.from_state(self, check=check)


@dataclass(frozen=True, kw_only=True, eq=False)
class DensityMatrix:
    """
    A density matrix on n qubits.

    Attributes: Attributes
        n_qubits (int): Register size, 1..8.
        entries (np.ndarray): Matrix entries, stored read-only.
        check (bool):
            Validate Hermiticity (1e-12), unit trace (1e-12) and positivity (1e-10).
            Defaults to True. Disabled checks are inherited by channel outputs.
    """

    n_qubits: int
    entries: np.ndarray = field(repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        check_n_qubits(self.n_qubits)
        dim = 2**self.n_qubits
        entries = frozen_array(self.entries, (dim, dim))
        object.__setattr__(self, "entries", entries)
        if not self.check:
            return

        deviation = hermitian_deviation(entries)
        if deviation > HERMITIAN_TOL:
            raise ValueError(f"density matrix is not Hermitian, deviation {deviation:.3e}")
        trace = complex(np.trace(entries))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        min_eig = float(linalg.eigvalsh(entries)[0])
        if min_eig < -PSD_TOL:
            raise ValueError(f"density matrix is not positive, min eigenvalue {min_eig:.3e}")

    @classmethod
    def from_state(cls, psi: StateVector, check: bool = True) -> DensityMatrix:
        """Pure-state projector |psi><psi|."""
        entries = np.outer(psi.amplitudes, psi.amplitudes.conj())
        return cls(n_qubits=psi.n_qubits, entries=entries, check=check)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> DensityMatrix:
        check_n_qubits(n_qubits)
        dim = 2**n_qubits
        return cls(n_qubits=n_qubits, entries=np.eye(dim) / dim)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues."""
        return linalg.eigvalsh(self.entries)

    @property
    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.entries, self.entries)))


def expectation(state: StateVector | DensityMatrix, obs: Operator) -> float:
    """
    Expectation value <psi|O|psi> or Tr(rho O) of a Hermitian observable.

    Raises:
        ValueError: If `obs` is not Hermitian, the register sizes differ, or the
            result carries an imaginary part above 1e-10.
    """
    if not obs.hermitian:
        raise ValueError("observable is not Hermitian")
    if state.n_qubits != obs.n_qubits:
        raise ValueError(
            f"dimension mismatch: state on {state.n_qubits}, observable on {obs.n_qubits} qubits"
        )

    match state:
        case StateVector():
            value = np.vdot(state.amplitudes, obs.entries @ state.amplitudes)
        case DensityMatrix():
            value = np.einsum("ij,ji->", state.entries, obs.entries)
        case _:
            raise ValueError(f"unsupported state type {type(state).__name__}")

    if abs(value.imag) > IMAG_TOL:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def fidelity_with_pure(rho: DensityMatrix, psi: StateVector) -> float:
    """Fidelity <psi|rho|psi>, within [0, 1] up to 1e-10."""
    if rho.n_qubits != psi.n_qubits:
        raise ValueError(
            f"dimension mismatch: {rho.n_qubits} vs {psi.n_qubits} qubits"
        )
    value = np.vdot(psi.amplitudes, rho.entries @ psi.amplitudes)
    fidelity = float(value.real)
    if abs(value.imag) > IMAG_TOL or not -PSD_TOL <= fidelity <= 1 + PSD_TOL:
        raise ValueError(f"fidelity {value!r} outside [0, 1]")
    return fidelity


def main():
    psi = StateVector.from_bitstring("01")
    z1 = Operator(n_qubits=2, entries=np.diag([1, 1, -1, -1]))
    print(psi, z1)
    print(f"<Z1> = {expectation(psi, z1)}")


if __name__ == "__main__":
    main()
