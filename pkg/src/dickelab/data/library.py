"""
Named states and witnesses available from the command line.

A state source is either a builtin name or the path of a density-matrix JSON file.
"""

from enum import StrEnum
from math import pi
from pathlib import Path

from dickelab.core.operator import DensityMatrix, Operator
from dickelab.data.io import read_density_matrix
from dickelab.noise.channel import NoiseParams, noisy_dicke_state
from dickelab.state.dicke import phased_dicke4, xi_state
from dickelab.witness.witness import multipartite_witness, structural_witness, wbar_witness


class BuiltinState(StrEnum):
    DICKE4 = "dicke4"
    DICKE4_NOISY = "dicke4-noisy"
    XI = "xi"
    MAXIMALLY_MIXED = "maximally-mixed"


class BuiltinWitness(StrEnum):
    WBAR = "wbar"
    W_PI = "w-pi"
    WMULT = "wmult"
    IDENTITY = "identity"
    NEG_IDENTITY = "neg-identity"


def get_state(source: str, params: NoiseParams | None = None) -> DensityMatrix:
    """
    Resolves a builtin state name or a density-matrix file path.

    `params` applies to "dicke4-noisy" only.

    Raises:
        ValueError: If `source` is neither a builtin name nor an existing file.
    """
    if source in set(BuiltinState):
        match BuiltinState(source):
            case BuiltinState.DICKE4:
                return phased_dicke4().projector()
            case BuiltinState.DICKE4_NOISY:
                return noisy_dicke_state(params or NoiseParams())
            case BuiltinState.XI:
                return xi_state().projector()
            case BuiltinState.MAXIMALLY_MIXED:
                return DensityMatrix.maximally_mixed(4)
    if Path(source).is_file():
        return read_density_matrix(source)
    names = ", ".join(BuiltinState)
    raise ValueError(f"unknown state {source!r}: expected one of {names} or a file path")


def get_witness(name: str) -> Operator:
    """
    Raises:
        ValueError: On an unknown witness name.
    """
    if name not in set(BuiltinWitness):
        names = ", ".join(BuiltinWitness)
        raise ValueError(f"unknown witness {name!r}: expected one of {names}")
    match BuiltinWitness(name):
        case BuiltinWitness.WBAR:
            return wbar_witness()
        case BuiltinWitness.W_PI:
            return structural_witness(pi)
        case BuiltinWitness.WMULT:
            return multipartite_witness()
        case BuiltinWitness.IDENTITY:
            return Operator.identity(4)
        case BuiltinWitness.NEG_IDENTITY:
            return -Operator.identity(4)
