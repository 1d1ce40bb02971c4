"""
Reading and writing dickelab data: attribute reports, result tables, JSON payloads and
density-matrix files.
"""

import json
from enum import StrEnum
from math import floor, log10
from pathlib import Path

import numpy as np
import pandas as pd

from dickelab.core.operator import DensityMatrix, check_n_qubits

FILE_HERMITIAN_TOL = 1e-8
FILE_TRACE_TOL = 1e-8


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


def round_sig(value: float, sig_figs: int) -> float:
    if value == 0 or not np.isfinite(value):
        return value
    return round(value, sig_figs - int(floor(log10(abs(value)))) - 1)


def report(
    obj,
    attribute_names: str | list[str] | None = None,
    exclude_attribute_names: list[str] | None = None,
    report_type: str = "print",
    with_name: bool = True,
    sig_figs: int | None = None,
) -> dict | None:
    """
    Prints, or returns as a dict, the annotated attributes of a record.

    Args:
        report_type: "print" writes `name = value` lines to stdout, "dict" returns them.
        sig_figs: Optional rounding of float values for display.
    """
    # convert single-value attribute to list
    if attribute_names is None:
        attribute_names = list(obj.__annotations__.keys())
    if not isinstance(attribute_names, list):
        attribute_names = [attribute_names]
    if exclude_attribute_names is not None:
        attribute_names = [a for a in attribute_names if a not in exclude_attribute_names]

    values = {}
    for att in attribute_names:
        if hasattr(obj, att):
            att_val = getattr(obj, att)
            if sig_figs and isinstance(att_val, float):
                att_val = round_sig(att_val, sig_figs)
            values[att] = att_val

    match report_type:
        case "print":
            if with_name:
                print(f"{obj.__class__.__name__} Attributes:")
            for att, att_val in values.items():
                if att_val is not None:
                    print(f"    {att} = {att_val}")
            return None
        case "dict":
            return values
        case _:
            raise ValueError(f"Unknown report_type {report_type!r}")


def write_json(payload: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def table_records(table: pd.DataFrame) -> list[dict]:
    """Rows as plain-float records, in column order."""
    return [
        {col: float(val) for col, val in zip(table.columns, row)}
        for row in table.itertuples(index=False, name=None)
    ]


def format_table(
    table: pd.DataFrame,
    output_format: OutputFormat | str,
    config: dict | None = None,
    summary: dict | None = None,
) -> str:
    """
    Renders a numeric table as CSV (full float precision) or as JSON with the run
    configuration under "config", rows under "rows" and scalar results alongside.
    """
    match OutputFormat(output_format):
        case OutputFormat.CSV:
            return table.to_csv(index=False, float_format="%.17g", lineterminator="\n")
        case OutputFormat.JSON:
            payload = {"config": config or {}, "rows": table_records(table)}
            payload |= summary or {}
            return json.dumps(payload, indent=2) + "\n"


def write_table(
    table: pd.DataFrame,
    path: str | Path,
    output_format: OutputFormat | str = OutputFormat.CSV,
    config: dict | None = None,
    summary: dict | None = None,
) -> None:
    text = format_table(table, output_format, config=config, summary=summary)
    Path(path).write_text(text, encoding="utf-8")


def read_table(path: str | Path) -> pd.DataFrame:
    """Reads a CSV result table without losing float precision."""
    return pd.read_csv(path, float_precision="round_trip")


def read_density_matrix(path: str | Path) -> DensityMatrix:
    """
    Loads a density matrix from JSON `{"n_qubits": n, "entries": [[re, im], ...]}` with
    4^n row-major entries.

    Hermiticity and unit trace are checked to 1e-8 before the matrix is symmetrized and
    renormalized; positivity is then checked by `DensityMatrix`.

    Raises:
        ValueError: On a malformed file or a matrix outside the tolerances.
    """
    data = read_json(path)
    try:
        n_qubits = data["n_qubits"]
        pairs = np.asarray(data["entries"], dtype=float)
    except (KeyError, TypeError) as err:
        raise ValueError(f"malformed density-matrix file {path}: {err}") from err
    if isinstance(n_qubits, bool) or not isinstance(n_qubits, int):
        raise ValueError(f"n_qubits in {path} must be an integer, got {n_qubits!r}")
    check_n_qubits(n_qubits)

    dim = 2**n_qubits
    pairs = pairs.reshape(-1, 2) if pairs.size == 2 * dim * dim else pairs
    if pairs.shape != (dim * dim, 2):
        raise ValueError(
            f"expected {dim * dim} [re, im] entries for {n_qubits} qubits, got shape {pairs.shape}"
        )
    matrix = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(dim, dim)

    deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
    if deviation > FILE_HERMITIAN_TOL:
        raise ValueError(f"density matrix in {path} is not Hermitian, deviation {deviation:.3e}")
    trace = complex(np.trace(matrix))
    if abs(trace - 1) > FILE_TRACE_TOL:
        raise ValueError(f"density matrix in {path} has trace {trace!r}")

    matrix = (matrix + matrix.conj().T) / 2
    matrix = matrix / np.trace(matrix).real
    return DensityMatrix(n_qubits=n_qubits, entries=matrix)


def write_density_matrix(rho: DensityMatrix, path: str | Path) -> None:
    flat = rho.entries.reshape(-1)
    payload = {
        "n_qubits": rho.n_qubits,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }
    write_json(payload, path)
