"""
Bounds derived from witness values, and closed-form expectations under noise.

This module defines the `BoundReport` record together with
- the fidelity lower bound F >= 2/3 - <W_mult>/3,
- the random-noise robustness lower bound E_R >= D |<W>| / Tr(W) for a detecting witness,
- closed-form structure-factor, witness and fidelity values of the noisy phased Dicke
  state as functions of (q1, q2, q3).
"""

# allows user classes in type hints
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import nan, sqrt

from dickelab.core.operator import DensityMatrix, Operator, StateVector, expectation
from dickelab.data.io import report
from dickelab.noise.channel import NoiseParams, check_probability

# W-bar(q2) ~ c0 + c1 q2 + c2 q2^2 at q1 = q3 = 0.05, to three decimals
ROUNDED_WBAR_COEFFICIENTS = (-0.455, 2.333, -2.333)
ROUNDED_CURVE_Q1 = 0.05
ROUNDED_CURVE_Q3 = 0.05


@dataclass(frozen=True, kw_only=True)
class BoundReport:
    """
    Attributes: Attributes
        witness_value (float): <W>.
        fidelity_lower_bound (float): 2/3 - <W>/3; NaN unless W is the multipartite witness.
        random_robustness_lower_bound (float): D |<W>| / Tr(W) when <W> < 0, else 0.
        trace_of_witness (float): Tr(W).
        dimension (int): Hilbert space dimension D.
    """

    witness_value: float
    fidelity_lower_bound: float = nan
    random_robustness_lower_bound: float
    trace_of_witness: float
    dimension: int

    @property
    def detected(self) -> bool:
        """True when the witness certifies entanglement."""
        return self.witness_value < 0

    def to_dict(self) -> dict:
        return asdict(self) | {"detected": self.detected}

    def report(self, **kwargs):
        report(self, **kwargs)


def fidelity_bound(wmult_value: float) -> float:
    """Lower bound 2/3 - <W_mult>/3 on the fidelity to the phased Dicke state."""
    return 2 / 3 - wmult_value / 3


def robustness_from_value(
    witness_value: float,
    trace_of_witness: float,
    dimension: int,
    fidelity_lower_bound: float = nan,
) -> BoundReport:
    """
    Robustness bound from a measured or computed witness value.

    Raises:
        ValueError: If Tr(W) <= 0.
    """
    if not trace_of_witness > 0:
        raise ValueError(f"witness trace must be positive, got {trace_of_witness}")
    bound = dimension * abs(witness_value) / trace_of_witness if witness_value < 0 else 0.0
    return BoundReport(
        witness_value=float(witness_value),
        fidelity_lower_bound=fidelity_lower_bound,
        random_robustness_lower_bound=bound,
        trace_of_witness=float(trace_of_witness),
        dimension=int(dimension),
    )


def robustness_bound(
    rho: DensityMatrix | StateVector, w: Operator, fidelity: bool = False
) -> BoundReport:
    """
    Evaluates W on a state and derives its bounds.

    Args:
        fidelity: Also fill the fidelity bound; meaningful only for the multipartite witness.
    """
    if not w.hermitian:
        raise ValueError("witness is not Hermitian")
    trace = w.trace().real
    if not trace > 0:
        raise ValueError(f"witness trace must be positive, got {trace}")
    value = expectation(rho, w)
    return robustness_from_value(
        value,
        trace,
        w.dim,
        fidelity_lower_bound=fidelity_bound(value) if fidelity else nan,
    )


@dataclass(frozen=True, kw_only=True)
class ClosedFormExpectations:
    """
    Attributes: Attributes
        sxx (float): <S_xx(pi)>.
        syy (float): <S_yy(pi)>.
        szz (float): <S_zz(0)>.
        xxxx (float): <XXXX>, equal to <YYYY>.
        zzzz (float): <ZZZZ>.
        wbar (float): <W-bar>.
        wmult (float): <W_mult>.
        fidelity (float): <D4ph|rho|D4ph>.
    """

    sxx: float
    syy: float
    szz: float
    xxxx: float
    zzzz: float
    wbar: float
    wmult: float
    fidelity: float

    def report(self, **kwargs):
        report(self, **kwargs)


def closed_form_expectations(params: NoiseParams) -> ClosedFormExpectations:
    """Exact expectations on `noisy_dicke_state(params)` without building the state."""
    q1, q2, q3 = params.q1, params.q2, params.q3
    u2 = q2 * (1 - q2)
    u3 = q3 * (1 - q3)
    keep3 = (1 - q3) ** 2

    sxx = 4 - 8 / 3 * q3 * (3 - q3) - 16 / 3 * keep3 * (q1 * (1 - 2 * q2) ** 2 + 2 * u2)
    syy = 4 - 16 / 3 * q1 * keep3 + 8 / 3 * (q3 - 3) * q3
    szz = -2 + 16 / 3 * u2
    xxxx = (1 - 2 * q3) ** 2
    zzzz = 1.0

    wbar = 1 - (sxx + syy - szz) / 6
    wmult = (21 - 2 * sxx - 2 * syy + szz - 4 * xxxx - 7 * zzzz) / 8
    fidelity = 2 / 3 - wmult / 3 + 4 / 9 * u2 * u3
    return ClosedFormExpectations(
        sxx=sxx,
        syy=syy,
        szz=szz,
        xxxx=xxxx,
        zzzz=zzzz,
        wbar=wbar,
        wmult=wmult,
        fidelity=fidelity,
    )


def wbar_zero_crossing(q1: float = 0.05, q3: float = 0.05) -> float:
    """
    Smallest q2 at which <W-bar> reaches 0, NaN if it stays negative up to q2 = 1/2 or
    is non-negative already at q2 = 0.

    <W-bar> is affine in q2 (1 - q2): W0 + b q2 (1 - q2).
    """
    check_probability("q1", q1)
    check_probability("q3", q3)
    w0 = closed_form_expectations(NoiseParams(q1=q1, q2=0.0, q3=q3)).wbar
    slope = 8 / 9 * ((1 - q3) ** 2 * (2 - 4 * q1) + 1)
    if w0 >= 0:
        return nan
    u = -w0 / slope
    if u > 0.25:
        return nan
    return (1 - sqrt(1 - 4 * u)) / 2


def rounded_wbar_curve(q2: float) -> float:
    """Three-decimal quadratic fit of <W-bar>(q2) at q1 = q3 = 0.05."""
    c0, c1, c2 = ROUNDED_WBAR_COEFFICIENTS
    return c0 + c1 * q2 + c2 * q2**2


def main():
    params = NoiseParams(q1=0.05, q2=0.0175, q3=0.05)
    closed_form_expectations(params).report(sig_figs=4)
    print(f"zero crossing q2 = {wbar_zero_crossing():.6f}")
    robustness_from_value(-0.382, 16, 16).report()


if __name__ == "__main__":
    main()
