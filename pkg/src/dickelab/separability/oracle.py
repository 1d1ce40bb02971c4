"""
Numerical separability oracle.

`minimize_witness` estimates min <W> over fully separable pure product states. Each qubit
state is cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>. A seeded random sample over the
Bloch spheres seeds `restarts` coordinate-descent runs; each coordinate step is a bounded
scalar minimization over one angle. A witness is accepted when the estimated minimum is
not below -tol.

Results depend only on (W, restarts, samples, seed, tol); runs with several workers merge
restarts in index order and reproduce single-worker results exactly.
"""

# allows user classes in type hints
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial, reduce
from math import pi

import numpy as np
from scipy.optimize import minimize_scalar

from dickelab.core.operator import MAX_QUBITS, Operator, StateVector
from dickelab.data.io import report

logger = logging.getLogger(__name__)

TWO_PI = 2 * pi
LINE_XATOL = 1e-9


def fold_angles(theta: float, phi: float) -> tuple[float, float]:
    """Maps any (theta, phi) onto the same Bloch vector with theta in [0, pi], phi in [0, 2pi)."""
    theta = theta % TWO_PI
    if theta > pi:
        theta = TWO_PI - theta
        phi = phi + pi
    phi = phi % TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True, kw_only=True)
class ProductStateParams:
    """
    Bloch angles of a product state.

    Attributes: Attributes
        thetas (tuple[float, ...]): Polar angles, each within [0, pi].
        phis (tuple[float, ...]): Azimuthal angles, each within [0, 2pi).
    """

    thetas: tuple[float, ...]
    phis: tuple[float, ...]

    def __post_init__(self):
        thetas = tuple(float(t) for t in self.thetas)
        phis = tuple(float(p) for p in self.phis)
        if len(thetas) != len(phis):
            raise ValueError(f"{len(thetas)} thetas but {len(phis)} phis")
        if not 1 <= len(thetas) <= MAX_QUBITS:
            raise ValueError(f"product state needs 1..{MAX_QUBITS} qubits, got {len(thetas)}")
        for t, p in zip(thetas, phis):
            if not 0.0 <= t <= pi or not 0.0 <= p < TWO_PI:
                raise ValueError(f"angles (theta={t}, phi={p}) out of range")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "phis", phis)

    @property
    def n_qubits(self) -> int:
        return len(self.thetas)

    @classmethod
    def from_vector(cls, x: np.ndarray) -> ProductStateParams:
        """From interleaved angles [theta_1, phi_1, theta_2, phi_2, ...], folded into range."""
        folded = [fold_angles(t, p) for t, p in zip(x[0::2], x[1::2])]
        return cls(thetas=tuple(t for t, _ in folded), phis=tuple(p for _, p in folded))

    @classmethod
    def random(cls, n_qubits: int, rng: np.random.Generator) -> ProductStateParams:
        """Uniform over the Bloch spheres."""
        thetas = np.arccos(rng.uniform(-1.0, 1.0, n_qubits))
        phis = rng.uniform(0.0, TWO_PI, n_qubits)
        return cls(thetas=tuple(thetas), phis=tuple(phis))

    def as_vector(self) -> np.ndarray:
        return np.column_stack([self.thetas, self.phis]).reshape(-1)

    def to_dict(self) -> dict:
        return {"thetas": list(self.thetas), "phis": list(self.phis)}


def bloch_kets(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Single-qubit kets, shape (..., 2), for broadcastable angle arrays."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    return np.stack(
        [np.cos(thetas / 2) + 0j, np.exp(1j * phis) * np.sin(thetas / 2)], axis=-1
    )


def batch_product_states(kets: np.ndarray) -> np.ndarray:
    """Tensor products of kets of shape (m, n, 2), returned with shape (m, 2^n)."""
    psi = kets[:, 0, :]
    for q in range(1, kets.shape[1]):
        psi = (psi[:, :, None] * kets[:, q, None, :]).reshape(len(kets), -1)
    return psi


def batch_expectations(w_entries: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Real parts of <psi_m|W|psi_m> for rows psi_m."""
    return np.real(np.sum(psi.conj() * (psi @ w_entries.T), axis=1))


def product_state(params: ProductStateParams) -> StateVector:
    kets = bloch_kets(params.thetas, params.phis)
    return StateVector(n_qubits=params.n_qubits, amplitudes=reduce(np.kron, kets))


def _value_at(w_entries: np.ndarray, x: np.ndarray) -> float:
    psi = reduce(np.kron, bloch_kets(x[0::2], x[1::2]))
    return float(np.real(np.vdot(psi, w_entries @ psi)))


@dataclass(frozen=True, kw_only=True)
class _DescentResult:
    x: np.ndarray = field(repr=False)
    value: float
    sweeps: int
    converged: bool


def _coordinate_descent(
    w_entries: np.ndarray, x0: np.ndarray, tol: float, max_sweeps: int
) -> _DescentResult:
    x = x0.copy()
    value = _value_at(w_entries, x)

    def line(t: float, index: int) -> float:
        y = x.copy()
        y[index] = t
        return _value_at(w_entries, y)

    for sweep in range(1, max_sweeps + 1):
        start = value
        for index in range(len(x)):
            centre = x[index]
            res = minimize_scalar(
                line,
                bounds=(centre - pi, centre + pi),
                args=(index,),
                method="bounded",
                options={"xatol": LINE_XATOL},
            )
            if res.fun < value:
                x[index] = res.x
                value = float(res.fun)
        for q in range(0, len(x), 2):
            x[q], x[q + 1] = fold_angles(x[q], x[q + 1])
        if start - value < tol / 10:
            return _DescentResult(x=x, value=value, sweeps=sweep, converged=True)
    return _DescentResult(x=x, value=value, sweeps=max_sweeps, converged=False)


@dataclass(frozen=True, kw_only=True)
class OracleConfig:
    """
    Attributes: Attributes
        restarts (int): Local descents, started from the best samples. Defaults to 32.
        samples (int): Random product states evaluated first. Defaults to 4096.
        seed (int): Seed of the sample generator. Defaults to 0.
        tol (float): Acceptance tolerance on the minimum. Defaults to 1e-6.
        max_sweeps (int): Coordinate sweeps per descent. Defaults to 200.
        workers (int): Threads running descents. Defaults to 1.

    Attributes: Derived Attributes
        constr (str): JSON constructor string, inverted by `from_constr`.
    """

    restarts: int = 32
    samples: int = 4096
    seed: int = 0
    tol: float = 1e-6
    max_sweeps: int = 200
    workers: int = 1
    constr: str = field(init=False, repr=False)

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be positive, got {self.restarts}")
        if self.samples < self.restarts:
            raise ValueError(
                f"samples ({self.samples}) must be at least restarts ({self.restarts})"
            )
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_sweeps < 1 or self.workers < 1:
            raise ValueError("max_sweeps and workers must be positive")
        object.__setattr__(self, "constr", json.dumps(self.to_dict()))

    def to_dict(self) -> dict:
        return {
            "restarts": self.restarts,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "max_sweeps": self.max_sweeps,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, **kwargs) -> OracleConfig:
        keys = ("restarts", "samples", "seed", "tol", "max_sweeps", "workers")
        return cls(**{k: kwargs[k] for k in keys if k in kwargs})

    @classmethod
    def from_constr(cls, constructor_str: str) -> OracleConfig:
        return cls.from_dict(**json.loads(constructor_str))


@dataclass(frozen=True, kw_only=True)
class OracleReport:
    """
    Attributes: Attributes
        min_value (float): Smallest <W> found over product states.
        argmin (ProductStateParams): Angles attaining `min_value`.
        restarts (int): Descents run.
        samples (int): Random samples evaluated.
        converged (bool): Whether the winning descent met the tolerance.
        seed (int): Sample generator seed.
        tol (float): Acceptance tolerance.
    """

    min_value: float
    argmin: ProductStateParams
    restarts: int
    samples: int
    converged: bool
    seed: int
    tol: float

    @property
    def passed(self) -> bool:
        """True when no product state gives <W> below -tol."""
        return self.min_value >= -self.tol

    def to_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "argmin": self.argmin.to_dict(),
            "restarts": self.restarts,
            "samples": self.samples,
            "converged": self.converged,
            "seed": self.seed,
            "tol": self.tol,
            "passed": self.passed,
        }

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["argmin"], **kwargs)


def minimize_witness(
    w: Operator,
    restarts: int = 32,
    samples: int = 4096,
    seed: int = 0,
    tol: float = 1e-6,
    *,
    max_sweeps: int = 200,
    workers: int = 1,
) -> OracleReport:
    """
    Estimates min <W> over fully separable product states.

    Raises:
        ValueError: If W is not Hermitian or the search settings are invalid.
    """
    if not w.hermitian:
        raise ValueError("witness is not Hermitian")
    config = OracleConfig(
        restarts=restarts,
        samples=samples,
        seed=seed,
        tol=tol,
        max_sweeps=max_sweeps,
        workers=workers,
    )
    n = w.n_qubits
    rng = np.random.default_rng(config.seed)
    thetas = np.arccos(rng.uniform(-1.0, 1.0, (config.samples, n)))
    phis = rng.uniform(0.0, TWO_PI, (config.samples, n))
    values = batch_expectations(w.entries, batch_product_states(bloch_kets(thetas, phis)))

    best_samples = np.argsort(values, kind="stable")[: config.restarts]
    starts = [np.column_stack([thetas[i], phis[i]]).reshape(-1) for i in best_samples]
    logger.debug(
        "best of %d samples: %.6g, starting %d descents",
        config.samples,
        values[best_samples[0]],
        len(starts),
    )

    descend = partial(
        _coordinate_descent, w.entries, tol=config.tol, max_sweeps=config.max_sweeps
    )
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(descend, starts))
    else:
        results = [descend(x0) for x0 in starts]

    winner = min(range(len(results)), key=lambda r: (results[r].value, r))
    best = results[winner]
    if not best.converged:
        logger.warning("winning descent did not converge within %d sweeps", config.max_sweeps)
    logger.info("product-state minimum %.9g from restart %d", best.value, winner)

    return OracleReport(
        min_value=best.value,
        argmin=ProductStateParams.from_vector(best.x),
        restarts=config.restarts,
        samples=config.samples,
        converged=best.converged,
        seed=config.seed,
        tol=config.tol,
    )


def verify_witness(w: Operator, config: OracleConfig | None = None) -> bool:
    """True when `w` stays non-negative on product states up to `config.tol`."""
    config = config or OracleConfig()
    result = minimize_witness(
        w,
        restarts=config.restarts,
        samples=config.samples,
        seed=config.seed,
        tol=config.tol,
        max_sweeps=config.max_sweeps,
        workers=config.workers,
    )
    if not result.passed:
        logger.info("witness fails on product state %s", result.argmin)
    return result.passed


def _scan(w: Operator, single: np.ndarray) -> tuple[float, tuple[int, ...]]:
    """
    Exhaustive minimum of <W> over all products of the single-qubit kets `single`,
    evaluated in chunks keyed on the first qubit.
    """
    n, g = w.n_qubits, len(single)
    if n == 1:
        values = batch_expectations(w.entries, single)
        return float(values.min()), (int(values.argmin()),)

    rest = single
    for _ in range(n - 2):
        rest = np.einsum("mi,gj->mgij", rest, single).reshape(len(rest) * g, -1)

    best_value, best_index = np.inf, (0,) * n
    for a in range(g):
        psi = np.einsum("i,mj->mij", single[a], rest).reshape(len(rest), -1)
        values = batch_expectations(w.entries, psi)
        m = int(values.argmin())
        if values[m] < best_value:
            best_value = float(values[m])
            best_index = (a, *np.unravel_index(m, (g,) * (n - 1)))
    return best_value, tuple(int(i) for i in best_index)


def grid_scan_minimum(w: Operator, points: int = 5) -> tuple[float, ProductStateParams]:
    """
    Minimum of <W> over product states on a Bloch grid with `points` polar angles in
    [0, pi] and `points` azimuths in [0, 2pi) per qubit.
    """
    if points < 2:
        raise ValueError(f"grid needs at least 2 points per angle, got {points}")
    tt, pp = np.meshgrid(
        np.linspace(0.0, pi, points),
        np.linspace(0.0, TWO_PI, points, endpoint=False),
        indexing="ij",
    )
    tt, pp = tt.ravel(), pp.ravel()
    value, index = _scan(w, bloch_kets(tt, pp))
    argmin = ProductStateParams(
        thetas=tuple(tt[i] for i in index), phis=tuple(pp[i] for i in index)
    )
    return value, argmin


def axis_product_minimum(w: Operator) -> float:
    """Minimum of <W> over products of the six Pauli eigenstates."""
    thetas = np.array([0.0, pi, pi / 2, pi / 2, pi / 2, pi / 2])
    phis = np.array([0.0, 0.0, 0.0, pi, pi / 2, 3 * pi / 2])
    value, _ = _scan(w, bloch_kets(thetas, phis))
    return value
