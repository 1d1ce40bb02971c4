"""
Parameter sweeps over the path dephasing probability q2.

Each row evaluates the noisy phased Dicke state at one q2 with q1 and q3 held fixed:
structure factors, <W-bar> from the density matrix and from the closed form, <W_mult>,
the fidelity, and the robustness bound of W-bar. Rows are collected in a pandas
DataFrame in grid order, so CSV and JSON output is byte-identical across runs.
"""

# allows user classes in type hints
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache, partial
from math import isnan, nan, pi
from pathlib import Path

import numpy as np
import pandas as pd

from dickelab.core.operator import Operator, expectation, fidelity_with_pure
from dickelab.data.io import OutputFormat, format_table, report, write_table
from dickelab.noise.channel import NoiseParams, check_probability, noisy_dicke_state
from dickelab.state.dicke import phased_dicke4
from dickelab.witness.bounds import (
    ROUNDED_CURVE_Q1,
    ROUNDED_CURVE_Q3,
    closed_form_expectations,
    robustness_bound,
    rounded_wbar_curve,
)
from dickelab.witness.structure import Axis, structure_factor
from dickelab.witness.witness import multipartite_witness, wbar_witness

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "q2",
    "sxx",
    "syy",
    "szz",
    "wbar_matrix",
    "wbar_closed_form",
    "wmult",
    "fidelity",
    "er_bound",
)
CLOSED_FORM_TOL = 1e-9


@dataclass(frozen=True, kw_only=True)
class SweepConfig:
    """
    Attributes: Attributes
        q1 (float): Polarization dephasing, held fixed. Defaults to 0.05.
        q3 (float): Second beam-splitter dephasing, held fixed. Defaults to 0.05.
        q2_start (float): First grid point. Defaults to 0.
        q2_stop (float): Last grid point, included. Defaults to 0.5.
        steps (int): Number of grid points. Defaults to 51.
        output_path (str): Destination file; empty writes to stdout.
        output_format (OutputFormat): "csv" or "json". Defaults to csv.
        seed (int): Recorded with the results. Defaults to 0.
        check_states (bool): Validate every density matrix. Defaults to False.
        workers (int): Threads evaluating rows. Defaults to 1.

    Attributes: Derived Attributes
        constr (str): JSON constructor string, inverted by `from_constr`.
    """

    q1: float = 0.05
    q3: float = 0.05
    q2_start: float = 0.0
    q2_stop: float = 0.5
    steps: int = 51
    output_path: str = ""
    output_format: OutputFormat = OutputFormat.CSV
    seed: int = 0
    check_states: bool = False
    workers: int = 1
    constr: str = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("q1", "q3", "q2_start", "q2_stop"):
            object.__setattr__(self, name, check_probability(name, getattr(self, name)))
        for name in ("steps", "workers", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.q2_start > self.q2_stop:
            raise ValueError(f"q2_start {self.q2_start} exceeds q2_stop {self.q2_stop}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        object.__setattr__(self, "output_format", OutputFormat(self.output_format))
        object.__setattr__(self, "output_path", str(self.output_path or ""))
        object.__setattr__(self, "constr", json.dumps(self.to_dict()))

    @property
    def q2_grid(self) -> np.ndarray:
        return np.linspace(self.q2_start, self.q2_stop, self.steps)

    def to_dict(self) -> dict:
        return {
            "q1": self.q1,
            "q3": self.q3,
            "q2_grid": {"start": self.q2_start, "stop": self.q2_stop, "steps": self.steps},
            "output_path": self.output_path,
            "format": str(self.output_format),
            "seed": self.seed,
            "check_states": self.check_states,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, **kwargs) -> SweepConfig:
        """
        Accepts the flat field names, or a nested "q2_grid" with start, stop and steps,
        and "format" for `output_format`.
        """
        kwargs = dict(kwargs)
        grid = kwargs.pop("q2_grid", None) or {}
        if not isinstance(grid, dict):
            raise ValueError(f"q2_grid must be an object with start, stop and steps, got {grid!r}")
        for key in ("start", "stop", "steps"):
            if key in grid:
                kwargs["steps" if key == "steps" else f"q2_{key}"] = grid[key]
        if "format" in kwargs:
            kwargs["output_format"] = kwargs.pop("format")
        names = [f for f in cls.__dataclass_fields__ if f != "constr"]
        return cls(**{k: v for k, v in kwargs.items() if k in names})

    @classmethod
    def from_constr(cls, constructor_str: str) -> SweepConfig:
        return cls.from_dict(**json.loads(constructor_str))

    @classmethod
    def from_file(cls, path: str | Path) -> SweepConfig:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"sweep configuration in {path} must be a JSON object")
        return cls.from_dict(**data)

    def replace(self, **changes) -> SweepConfig:
        """Copy with the given fields changed; `None` values are ignored."""
        fields = {f: getattr(self, f) for f in self.__dataclass_fields__ if f != "constr"}
        fields |= {k: v for k, v in changes.items() if v is not None}
        return SweepConfig(**fields)


@dataclass(frozen=True, kw_only=True)
class SweepRow:
    q2: float
    sxx: float
    syy: float
    szz: float
    wbar_matrix: float
    wbar_closed_form: float
    wmult: float
    fidelity: float
    er_bound: float


@dataclass(frozen=True, kw_only=True, eq=False)
class _SweepOperators:
    sxx: Operator
    syy: Operator
    szz: Operator
    wbar: Operator
    wmult: Operator


@lru_cache(maxsize=1)
def _sweep_operators() -> _SweepOperators:
    return _SweepOperators(
        sxx=structure_factor(Axis.X, Axis.X, pi),
        syy=structure_factor(Axis.Y, Axis.Y, pi),
        szz=structure_factor(Axis.Z, Axis.Z, 0.0),
        wbar=wbar_witness(),
        wmult=multipartite_witness(),
    )


def evaluate_row(q2: float, q1: float, q3: float, check: bool = False) -> SweepRow:
    """All sweep columns at a single (q1, q2, q3)."""
    params = NoiseParams(q1=q1, q2=q2, q3=q3)
    rho = noisy_dicke_state(params, check=check)
    ops = _sweep_operators()
    wbar = expectation(rho, ops.wbar)
    closed = closed_form_expectations(params)
    if abs(wbar - closed.wbar) > CLOSED_FORM_TOL:
        logger.warning(
            "W-bar at q2=%g differs from the closed form by %.3e", q2, abs(wbar - closed.wbar)
        )
    return SweepRow(
        q2=float(q2),
        sxx=expectation(rho, ops.sxx),
        syy=expectation(rho, ops.syy),
        szz=expectation(rho, ops.szz),
        wbar_matrix=wbar,
        wbar_closed_form=closed.wbar,
        wmult=expectation(rho, ops.wmult),
        fidelity=fidelity_with_pure(rho, phased_dicke4()),
        er_bound=robustness_bound(rho, ops.wbar).random_robustness_lower_bound,
    )


def interpolate_zero_crossing(q2: np.ndarray, values: np.ndarray) -> float:
    """First q2 where `values` rises from negative to non-negative, linearly interpolated."""
    for i in range(1, len(values)):
        if values[i - 1] < 0 <= values[i]:
            x0, x1, y0, y1 = q2[i - 1], q2[i], values[i - 1], values[i]
            return float(x0 - y0 * (x1 - x0) / (y1 - y0))
    return nan


@dataclass(kw_only=True, eq=False)
class SweepResult:
    """
    Attributes: Attributes
        config (SweepConfig): The configuration that produced the table.
        rows (pd.DataFrame): One row per grid point, columns `SWEEP_COLUMNS`.
        zero_crossing (float): Interpolated q2 where <W-bar> reaches 0, NaN if none.
        max_curve_deviation (float):
            Largest |<W-bar> - rounded quadratic fit| over the grid. The fit holds only at
            q1 = q3 = 0.05; NaN otherwise.
    """

    config: SweepConfig
    rows: pd.DataFrame = field(repr=False)
    zero_crossing: float
    max_curve_deviation: float

    def summary(self) -> dict:
        values = {
            "zero_crossing": self.zero_crossing,
            "max_curve_deviation": self.max_curve_deviation,
        }
        return {k: None if isnan(v) else v for k, v in values.items()}

    def render(self, output_format: OutputFormat | str | None = None) -> str:
        return format_table(
            self.rows,
            output_format or self.config.output_format,
            config=self.config.to_dict(),
            summary=self.summary(),
        )

    def write(self, path: str | Path | None = None) -> Path:
        path = path or self.config.output_path
        if not path:
            raise ValueError("no output path given")
        path = Path(path)
        write_table(
            self.rows,
            path,
            self.config.output_format,
            config=self.config.to_dict(),
            summary=self.summary(),
        )
        logger.info("wrote %d sweep rows to %s", len(self.rows), path)
        return path

    def report(self, **kwargs):
        report(self, exclude_attribute_names=["config", "rows"], **kwargs)


def run_sweep(config: SweepConfig) -> SweepResult:
    grid = config.q2_grid
    evaluate = partial(evaluate_row, q1=config.q1, q3=config.q3, check=config.check_states)
    logger.info(
        "sweeping %d q2 points in [%g, %g] at q1=%g, q3=%g",
        config.steps, config.q2_start, config.q2_stop, config.q1, config.q3,
    )
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(evaluate, grid))
    else:
        rows = [evaluate(q2) for q2 in grid]

    table = pd.DataFrame([asdict(r) for r in rows], columns=list(SWEEP_COLUMNS))
    wbar = table["wbar_matrix"].to_numpy()
    if (config.q1, config.q3) == (ROUNDED_CURVE_Q1, ROUNDED_CURVE_Q3):
        curve = np.array([rounded_wbar_curve(q2) for q2 in grid])
        deviation = float(np.max(np.abs(wbar - curve)))
    else:
        deviation = nan
    return SweepResult(
        config=config,
        rows=table,
        zero_crossing=interpolate_zero_crossing(grid, wbar),
        max_curve_deviation=deviation,
    )


def main():
    result = run_sweep(SweepConfig(steps=11))
    print(result.rows.to_string(index=False))
    result.report()


if __name__ == "__main__":
    main()
