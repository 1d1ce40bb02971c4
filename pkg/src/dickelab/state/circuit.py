"""
Gate-level circuits and the transformation onto the phased Dicke state.

This module defines `GateSpec` and `CircuitSpec` records together with the fixed circuit
that maps `xi_state` onto `phased_dicke4`, and Pauli conjugation through a unitary.
Qubits are 1-based, gates are listed in application order.
"""

# allows user classes in type hints
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import StrEnum
from functools import reduce
from math import sqrt

import numpy as np

from dickelab.core.operator import (
    UNITARY_TOL,
    Operator,
    StateVector,
    check_n_qubits,
)
from dickelab.core.pauli import (
    PAULI_MATRICES,
    PauliString,
    nearest_unit_phase,
    pauli_decomposition,
    pauli_string_to_operator,
)
from dickelab.data.io import report
from dickelab.state.dicke import phased_dicke4, xi_state

CONJUGATION_TOL = 1e-10

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / sqrt(2)
_PROJ0 = np.array([[1, 0], [0, 0]], dtype=complex)
_PROJ1 = np.array([[0, 0], [0, 1]], dtype=complex)


class GateKind(StrEnum):
    H = "H"
    X = "X"
    Z = "Z"
    CX = "CX"
    # Z on the target when the control is |0>
    CZBAR = "CZbar"

    @property
    def is_controlled(self) -> bool:
        return self in (GateKind.CX, GateKind.CZBAR)


@dataclass(frozen=True, kw_only=True)
class GateSpec:
    """
    Attributes: Attributes
        kind (GateKind): Gate type.
        target (int): 1-based target qubit.
        control (int | None): 1-based control qubit, required for controlled kinds.
    """

    kind: GateKind
    target: int
    control: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        if self.target < 1:
            raise ValueError(f"target must be a 1-based qubit index, got {self.target}")
        if self.kind.is_controlled:
            if self.control is None or self.control < 1:
                raise ValueError(f"{self.kind} needs a 1-based control qubit")
            if self.control == self.target:
                raise ValueError(f"{self.kind} control and target coincide on qubit {self.target}")
        elif self.control is not None:
            raise ValueError(f"{self.kind} takes no control qubit")

    @property
    def name(self) -> str:
        if self.kind.is_controlled:
            return f"{self.kind}{self.control}{self.target}"
        return f"{self.kind}{self.target}"

    def to_dict(self) -> dict:
        d = {"kind": str(self.kind), "target": self.target}
        if self.control is not None:
            d["control"] = self.control
        return d


def _embed(n_qubits: int, site_matrices: dict[int, np.ndarray]) -> np.ndarray:
    factors = (site_matrices.get(q, PAULI_MATRICES["I"]) for q in range(1, n_qubits + 1))
    return reduce(np.kron, factors)


def gate_operator(gate: GateSpec, n_qubits: int) -> Operator:
    """Dense unitary of a single gate on an n-qubit register."""
    for q in (gate.target, gate.control):
        if q is not None and q > n_qubits:
            raise ValueError(f"{gate.name} addresses qubit {q} on a {n_qubits}-qubit register")

    t, c = gate.target, gate.control
    match gate.kind:
        case GateKind.H:
            matrix = _embed(n_qubits, {t: _HADAMARD})
        case GateKind.X:
            matrix = _embed(n_qubits, {t: PAULI_MATRICES["X"]})
        case GateKind.Z:
            matrix = _embed(n_qubits, {t: PAULI_MATRICES["Z"]})
        case GateKind.CX:
            matrix = _embed(n_qubits, {c: _PROJ0}) + _embed(
                n_qubits, {c: _PROJ1, t: PAULI_MATRICES["X"]}
            )
        case GateKind.CZBAR:
            matrix = _embed(n_qubits, {c: _PROJ1}) + _embed(
                n_qubits, {c: _PROJ0, t: PAULI_MATRICES["Z"]}
            )
        case _:
            raise ValueError(f"Unknown gate kind {gate.kind}")
    return Operator(n_qubits=n_qubits, entries=matrix)


@dataclass(frozen=True, kw_only=True)
class CircuitSpec:
    """
    An ordered gate list on a fixed register.

    Attributes: Attributes
        n_qubits (int): Register size.
        gates (tuple[GateSpec, ...]): Gates in application order.
        name (str): Circuit label.

    Attributes: Derived Attributes
        constr (str): JSON constructor string, inverted by `from_constr`.
    """

    n_qubits: int
    gates: tuple[GateSpec, ...]
    name: str = ""
    constr: str = field(init=False, repr=False)

    def __post_init__(self):
        check_n_qubits(self.n_qubits)
        gates = tuple(g if isinstance(g, GateSpec) else GateSpec(**g) for g in self.gates)
        for g in gates:
            for q in (g.target, g.control):
                if q is not None and q > self.n_qubits:
                    raise ValueError(
                        f"{g.name} addresses qubit {q} on a {self.n_qubits}-qubit register"
                    )
        object.__setattr__(self, "gates", gates)
        object.__setattr__(
            self,
            "constr",
            json.dumps(
                {
                    "n_qubits": self.n_qubits,
                    "gates": [g.to_dict() for g in gates],
                    "name": self.name,
                }
            ),
        )

    def unitary(self) -> Operator:
        u = Operator.identity(self.n_qubits)
        for g in self.gates:
            u = gate_operator(g, self.n_qubits) @ u
        if not u.is_unitary(UNITARY_TOL):
            raise ValueError(f"circuit {self.name!r} is not unitary to {UNITARY_TOL}")
        return u

    def apply(self, psi: StateVector) -> StateVector:
        if psi.n_qubits != self.n_qubits:
            raise ValueError(
                f"dimension mismatch: state on {psi.n_qubits}, circuit on {self.n_qubits} qubits"
            )
        amplitudes = self.unitary().entries @ psi.amplitudes
        return StateVector(n_qubits=self.n_qubits, amplitudes=amplitudes)

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["constr"], **kwargs)

    @classmethod
    def from_dict(cls, **kwargs) -> CircuitSpec:
        return cls(
            n_qubits=kwargs["n_qubits"],
            gates=tuple(kwargs["gates"]),
            name=kwargs.get("name", ""),
        )

    @classmethod
    def from_constr(cls, constructor_str: str) -> CircuitSpec:
        return cls.from_dict(**json.loads(constructor_str))


def dicke_circuit() -> CircuitSpec:
    """Z4 . CZbar12 . CZbar34 . CX12 . CX34 . H1 . H3, mapping xi onto the phased Dicke state."""
    return CircuitSpec(
        n_qubits=4,
        gates=(
            GateSpec(kind=GateKind.H, target=1),
            GateSpec(kind=GateKind.H, target=3),
            GateSpec(kind=GateKind.CX, control=3, target=4),
            GateSpec(kind=GateKind.CX, control=1, target=2),
            GateSpec(kind=GateKind.CZBAR, control=3, target=4),
            GateSpec(kind=GateKind.CZBAR, control=1, target=2),
            GateSpec(kind=GateKind.Z, target=4),
        ),
        name="dicke",
    )


def dicke_variant_circuit() -> CircuitSpec:
    """Z1 . CX12 . CX34 . H1 . H3, reaching the phased Dicke state up to a global phase."""
    return CircuitSpec(
        n_qubits=4,
        gates=(
            GateSpec(kind=GateKind.H, target=1),
            GateSpec(kind=GateKind.H, target=3),
            GateSpec(kind=GateKind.CX, control=3, target=4),
            GateSpec(kind=GateKind.CX, control=1, target=2),
            GateSpec(kind=GateKind.Z, target=1),
        ),
        name="dicke-variant",
    )


def dicke_transform() -> Operator:
    """Unitary U with U |xi> = |D4ph> exactly."""
    return dicke_circuit().unitary()


@dataclass(frozen=True, kw_only=True, eq=False)
class TransformReport:
    """
    Attributes: Attributes
        circuit (CircuitSpec): The circuit applied to xi.
        unitary (Operator): Its dense unitary.
        overlap (complex): <D4ph| U |xi>.
        global_phase (complex): overlap / |overlap|.
    """

    circuit: CircuitSpec
    unitary: Operator = field(repr=False)
    overlap: complex
    global_phase: complex

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["unitary"], **kwargs)


def dicke_transform_variant() -> TransformReport:
    """Runs the reduced circuit on xi and reports the global phase it leaves on D4ph."""
    circuit = dicke_variant_circuit()
    u = circuit.unitary()
    out = StateVector(n_qubits=4, amplitudes=u.entries @ xi_state().amplitudes)
    overlap = phased_dicke4().overlap(out)
    return TransformReport(
        circuit=circuit,
        unitary=u,
        overlap=overlap,
        global_phase=overlap / abs(overlap),
    )


def conjugate_pauli(u: Operator, p: PauliString, tol: float = CONJUGATION_TOL) -> PauliString:
    """
    Returns the Pauli string equal to U P U^dagger, phase included.

    Raises:
        ValueError: If U is not unitary, or U P U^dagger is not a single Pauli string
            with a unit phase to `tol`.
    """
    if not u.is_unitary():
        raise ValueError("conjugating operator is not unitary")
    conjugated = pauli_string_to_operator(p, u.n_qubits).conjugate_by(u)
    coefficients = pauli_decomposition(conjugated)
    if not coefficients:
        raise ValueError(f"{p} conjugates to the zero operator")

    labels, coefficient = max(coefficients.items(), key=lambda item: abs(item[1]))
    residual = sqrt(sum(abs(c) ** 2 for k, c in coefficients.items() if k != labels))
    if residual > tol:
        raise ValueError(f"U {p} U^dagger is not a single Pauli string, residual {residual:.3e}")
    return PauliString(labels=labels, phase=nearest_unit_phase(coefficient, tol))


def main():
    u = dicke_transform()
    print(dicke_circuit())
    for sites in ({1: "Z"}, {2: "Z"}, {3: "Z"}, {1: "Z", 3: "Z"}):
        p = PauliString.from_sites(4, sites)
        print(f"U {p} U^dagger = {conjugate_pauli(u, p)}")
    dicke_transform_variant().report()


if __name__ == "__main__":
    main()
