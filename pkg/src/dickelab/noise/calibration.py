"""
Conversion between measured interference visibilities and dephasing probabilities.

Path and beam-splitter visibilities fall quadratically, V = (1 - 2q)^2, since two
dephased modes contribute; polarization visibility falls linearly, V = 1 - 2q.
"""

from enum import StrEnum
from math import sqrt


class VisibilityKind(StrEnum):
    PATH = "path"
    POLARIZATION = "polarization"
    BS = "bs"


def _check_visibility(v: float) -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must be within [0, 1], got {v}")
    return v


def q2_from_path_visibility(v: float) -> float:
    return (1 - sqrt(_check_visibility(v))) / 2


def q1_from_pol_visibility(v: float) -> float:
    return (1 - _check_visibility(v)) / 2


def q3_from_bs_visibility(v: float) -> float:
    return (1 - sqrt(_check_visibility(v))) / 2


def path_visibility(q2: float) -> float:
    return (1 - 2 * q2) ** 2


def pol_visibility(q1: float) -> float:
    return 1 - 2 * q1


def bs_visibility(q3: float) -> float:
    return (1 - 2 * q3) ** 2


def calibrate(kind: VisibilityKind | str, v: float) -> float:
    """Dephasing probability for a visibility of the given kind."""
    match VisibilityKind(kind):
        case VisibilityKind.PATH:
            return q2_from_path_visibility(v)
        case VisibilityKind.POLARIZATION:
            return q1_from_pol_visibility(v)
        case VisibilityKind.BS:
            return q3_from_bs_visibility(v)
