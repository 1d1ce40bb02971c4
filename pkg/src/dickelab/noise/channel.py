"""
Decoherence channels of the phased Dicke state preparation.

This module defines the `NoiseParams` record (q1 polarization, q2 path dephasing,
q3 second beam-splitter dephasing) and the Pauli channels each source induces, either
in the frame of the state xi or, after conjugation by the Dicke circuit, in the frame of
the phased Dicke state. Every channel is mixed-unitary with Pauli Kraus operators, so
the channels commute with each other.
"""

# allows user classes in type hints
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

from dickelab.core.channel import KrausChannel, apply_channel
from dickelab.core.operator import DensityMatrix
from dickelab.core.pauli import PauliString
from dickelab.data.io import report
from dickelab.state.dicke import phased_dicke4, xi_state

Q_MAX = 0.5


class ChannelFrame(StrEnum):
    XI = "xi"
    DICKE = "dicke"


class NoiseSource(StrEnum):
    POLARIZATION = "polarization"
    COLLECTIVE = "collective"
    SECOND_BS = "second_bs"


DEFAULT_ORDER = (NoiseSource.POLARIZATION, NoiseSource.COLLECTIVE, NoiseSource.SECOND_BS)


def check_probability(name: str, q: float) -> float:
    """Raises ValueError unless q is a number with 0 <= q <= 1/2."""
    try:
        q = float(q)
    except (TypeError, ValueError) as err:
        raise ValueError(f"{name} must be a number, got {q!r}") from err
    if not 0.0 <= q <= Q_MAX:
        raise ValueError(f"{name} must be within [0, 1/2], got {q}")
    return q


@dataclass(frozen=True, kw_only=True)
class NoiseParams:
    """
    Attributes: Attributes
        q1 (float): Polarization dephasing probability, [0, 1/2]. Defaults to 0.
        q2 (float): Path dephasing probability, [0, 1/2]. Defaults to 0.
        q3 (float): Second beam-splitter dephasing probability, [0, 1/2]. Defaults to 0.

    Attributes: Derived Attributes
        constr (str): JSON constructor string, inverted by `from_constr`.
    """

    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0
    constr: str = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("q1", "q2", "q3"):
            object.__setattr__(self, name, check_probability(name, getattr(self, name)))
        object.__setattr__(
            self, "constr", json.dumps({"q1": self.q1, "q2": self.q2, "q3": self.q3})
        )

    def to_dict(self) -> dict:
        return {"q1": self.q1, "q2": self.q2, "q3": self.q3}

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["constr"], **kwargs)

    @classmethod
    def from_dict(cls, **kwargs) -> NoiseParams:
        """Builds a record from the q1, q2, q3 keys of `kwargs`, ignoring other keys."""
        return cls(**{k: v for k, v in kwargs.items() if k in ("q1", "q2", "q3")})

    @classmethod
    def from_constr(cls, constructor_str: str) -> NoiseParams:
        return cls(**json.loads(constructor_str))


def _pauli(sites: dict[int, str]) -> PauliString:
    return PauliString.from_sites(4, sites)


def path_dephasing_channel(q2: float) -> KrausChannel:
    """Independent Z flips of probability q2 on qubits 1 and 3 (xi frame)."""
    q = check_probability("q2", q2)
    return KrausChannel.from_pauli_terms(
        4,
        [
            ((1 - q) ** 2, _pauli({})),
            (q * (1 - q), _pauli({1: "Z"})),
            (q * (1 - q), _pauli({3: "Z"})),
            (q**2, _pauli({1: "Z", 3: "Z"})),
        ],
        name="path_dephasing",
    )


def collective_channel(q2: float) -> KrausChannel:
    """Path dephasing seen in the Dicke frame: Y1Y2 and Y3Y4 flips of probability q2."""
    q = check_probability("q2", q2)
    return KrausChannel.from_pauli_terms(
        4,
        [
            ((1 - q) ** 2, _pauli({})),
            (q * (1 - q), _pauli({1: "Y", 2: "Y"})),
            (q * (1 - q), _pauli({3: "Y", 4: "Y"})),
            (q**2, _pauli({1: "Y", 2: "Y", 3: "Y", 4: "Y"})),
        ],
        name="collective",
    )


def polarization_channel(q1: float, frame: ChannelFrame | str = ChannelFrame.XI) -> KrausChannel:
    """
    Polarization dephasing with probability q1, acting as Z2 on xi or as Z1Z2 in the
    Dicke frame.
    """
    q = check_probability("q1", q1)
    match ChannelFrame(frame):
        case ChannelFrame.XI:
            flip = _pauli({2: "Z"})
        case ChannelFrame.DICKE:
            flip = _pauli({1: "Z", 2: "Z"})
    return KrausChannel.from_pauli_terms(
        4, [(1 - q, _pauli({})), (q, flip)], name=f"polarization[{frame}]"
    )


def second_bs_channel(q3: float) -> KrausChannel:
    """Independent Z flips of probability q3 on qubits 1 and 3 (Dicke frame)."""
    channel = path_dephasing_channel(check_probability("q3", q3))
    return KrausChannel(n_qubits=4, kraus_ops=channel.kraus_ops, name="second_bs")


def noise_channel(source: NoiseSource | str, params: NoiseParams) -> KrausChannel:
    """Dicke-frame channel of a single noise source."""
    match NoiseSource(source):
        case NoiseSource.POLARIZATION:
            return polarization_channel(params.q1, ChannelFrame.DICKE)
        case NoiseSource.COLLECTIVE:
            return collective_channel(params.q2)
        case NoiseSource.SECOND_BS:
            return second_bs_channel(params.q3)


def _check_order(order: Sequence[NoiseSource | str]) -> tuple[NoiseSource, ...]:
    order = tuple(NoiseSource(s) for s in order)
    if sorted(order) != sorted(NoiseSource):
        raise ValueError(f"order must list each noise source once, got {list(order)}")
    return order


def noisy_dicke_state(
    params: NoiseParams,
    order: Sequence[NoiseSource | str] = DEFAULT_ORDER,
    check: bool = True,
) -> DensityMatrix:
    """
    Phased Dicke state after the polarization, collective and second beam-splitter
    channels. The channels commute, so `order` changes the result only at rounding level.
    """
    rho = phased_dicke4().projector(check=check)
    for source in _check_order(order):
        rho = apply_channel(rho, noise_channel(source, params))
    return rho


def noisy_xi_state(q1: float, q2: float, check: bool = True) -> DensityMatrix:
    """xi after polarization and path dephasing, both in the xi frame."""
    rho = xi_state().projector(check=check)
    rho = apply_channel(rho, polarization_channel(q1, ChannelFrame.XI))
    return apply_channel(rho, path_dephasing_channel(q2))


def main():
    params = NoiseParams(q1=0.05, q2=0.0175, q3=0.05)
    params.report()
    rho = noisy_dicke_state(params)
    print(f"purity = {rho.purity}")


if __name__ == "__main__":
    main()
