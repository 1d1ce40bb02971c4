"""
Structural entanglement witnesses.

A generalized witness is W = 1 - (c_x S_xx(k_x) + c_y S_yy(k_y) + c_z S_zz(k_z)) / B(n, 2)
with |c_a| <= 1, where B(n, 2) = n (n - 1) / 2. Negative expectation values certify
entanglement. `multipartite_witness` adds four-body terms and certifies genuine
four-partite entanglement.
"""

# allows user classes in type hints
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, pi

from dickelab.core.operator import Operator
from dickelab.core.pauli import PauliString, pauli_string_to_operator
from dickelab.data.io import report
from dickelab.witness.structure import Axis, structure_factor


def _check_coefficients(c) -> tuple[float, float, float]:
    c = tuple(float(x) for x in c)
    if len(c) != 3:
        raise ValueError(f"expected three coefficients (c_x, c_y, c_z), got {len(c)}")
    for axis, value in zip("xyz", c):
        if not abs(value) <= 1.0:
            raise ValueError(f"|c_{axis}| must not exceed 1, got {value}")
    return c


def generalized_witness(
    kx: float,
    ky: float,
    kz: float,
    c: tuple[float, float, float] = (1.0, 1.0, 1.0),
    n: int = 4,
) -> Operator:
    """Witness with an independent wave number per axis."""
    cx, cy, cz = _check_coefficients(c)
    sigma = (
        cx * structure_factor(Axis.X, Axis.X, kx, n)
        + cy * structure_factor(Axis.Y, Axis.Y, ky, n)
        + cz * structure_factor(Axis.Z, Axis.Z, kz, n)
    )
    return Operator.identity(n) - sigma * (1 / comb(n, 2))


def structural_witness(
    k: float, c: tuple[float, float, float] = (1.0, 1.0, 1.0), n: int = 4
) -> Operator:
    """Witness with a common wave number k on all three axes."""
    return generalized_witness(k, k, k, c, n)


def wbar_witness(n: int = 4) -> Operator:
    """W-bar = 1 - (S_xx(pi) + S_yy(pi) - S_zz(0)) / B(n, 2)."""
    return generalized_witness(pi, pi, 0.0, (1.0, 1.0, -1.0), n)


def _full_correlation(label: str) -> Operator:
    return pauli_string_to_operator(PauliString(labels=label * 4))


def multipartite_witness() -> Operator:
    """
    Four-qubit witness of genuine multipartite entanglement,
    (21 - 2 S_xx(pi) - 2 S_yy(pi) + S_zz(0) - 2 XXXX - 2 YYYY - 7 ZZZZ) / 8.
    Its expectation bounds the fidelity to the phased Dicke state from below.
    """
    total = (
        21 * Operator.identity(4)
        - 2 * structure_factor(Axis.X, Axis.X, pi)
        - 2 * structure_factor(Axis.Y, Axis.Y, pi)
        + structure_factor(Axis.Z, Axis.Z, 0.0)
        - 2 * _full_correlation("X")
        - 2 * _full_correlation("Y")
        - 7 * _full_correlation("Z")
    )
    return total * (1 / 8)


@dataclass(frozen=True, kw_only=True)
class WitnessSpec:
    """
    Parameters of a generalized witness.

    Attributes: Attributes
        n_qubits (int): Register size. Defaults to 4.
        c (tuple[float, float, float]): Axis coefficients, each within [-1, 1].
        k (tuple[float, float, float]): Wave numbers (k_x, k_y, k_z).

    Attributes: Derived Attributes
        constr (str): JSON constructor string, inverted by `from_constr`.
    """

    n_qubits: int = 4
    c: tuple[float, float, float] = (1.0, 1.0, 1.0)
    k: tuple[float, float, float] = (pi, pi, pi)
    constr: str = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "c", _check_coefficients(self.c))
        k = tuple(float(x) for x in self.k)
        if len(k) != 3:
            raise ValueError(f"expected three wave numbers (k_x, k_y, k_z), got {len(k)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(
            self,
            "constr",
            json.dumps({"n_qubits": self.n_qubits, "c": list(self.c), "k": list(self.k)}),
        )

    def operator(self) -> Operator:
        return generalized_witness(*self.k, c=self.c, n=self.n_qubits)

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["constr"], **kwargs)

    @classmethod
    def from_dict(cls, **kwargs) -> WitnessSpec:
        keys = ("n_qubits", "c", "k")
        return cls(**{key: kwargs[key] for key in keys if key in kwargs})

    @classmethod
    def from_constr(cls, constructor_str: str) -> WitnessSpec:
        return cls.from_dict(**json.loads(constructor_str))
