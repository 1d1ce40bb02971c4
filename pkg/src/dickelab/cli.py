"""
Command-line entry point.

    dickelab sweep     [--config FILE] [--q1 Q] [--q3 Q] [--q2-start Q] [--q2-stop Q] [--steps N]
    dickelab witness   [STATE [WITNESS]] [--q1 Q --q2 Q --q3 Q]
    dickelab oracle    [WITNESS | --coefficients CX CY CZ --wavenumbers KX KY KZ]
    dickelab calibrate KIND V
    dickelab fidelity-bound W

All commands accept --seed, --output, --format and --log-level. Only the sweep table
honours --format; the other commands write JSON. Exit codes: 0 success (entanglement
detected, witness accepted), 1 negative outcome (not detected, witness rejected),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from math import isnan

from dickelab import __version__
from dickelab.analysis.sweep import SweepConfig, run_sweep
from dickelab.data.io import OutputFormat, write_json
from dickelab.data.library import BuiltinState, BuiltinWitness, get_state, get_witness
from dickelab.noise.calibration import VisibilityKind, calibrate
from dickelab.noise.channel import NoiseParams
from dickelab.separability.oracle import OracleConfig, minimize_witness
from dickelab.witness.bounds import fidelity_bound, robustness_bound
from dickelab.witness.witness import WitnessSpec

logger = logging.getLogger(__name__)

TOOL_NAME = "dickelab"
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def _cmd_sweep(ns: argparse.Namespace) -> int:
    config = SweepConfig.from_file(ns.config) if ns.config else SweepConfig()
    config = config.replace(
        q1=ns.q1,
        q3=ns.q3,
        q2_start=ns.q2_start,
        q2_stop=ns.q2_stop,
        steps=ns.steps,
        workers=ns.workers,
        output_path=ns.output,
        output_format=ns.format,
        seed=ns.seed,
        check_states=ns.check_states or None,
    )
    result = run_sweep(config)

    if config.output_path:
        result.write()
        crossing = "none" if isnan(result.zero_crossing) else f"{result.zero_crossing:.6f}"
        print(f"rows = {len(result.rows)}")
        print(f"zero_crossing = {crossing}")
        print(f"max_curve_deviation = {result.max_curve_deviation:.3e}")
    else:
        sys.stdout.write(result.render())
    return EXIT_OK


def _cmd_witness(ns: argparse.Namespace) -> int:
    params = NoiseParams(q1=ns.q1, q2=ns.q2, q3=ns.q3)
    rho = get_state(ns.state, params)
    w = get_witness(ns.witness)
    bound = robustness_bound(rho, w, fidelity=ns.witness == BuiltinWitness.WMULT)
    logger.info("<%s> on %s = %.12g", ns.witness, ns.state, bound.witness_value)

    bound.report(with_name=False)
    print(f"    detected = {bound.detected}")
    if ns.output:
        payload = {"state": ns.state, "witness": ns.witness} | bound.to_dict()
        if ns.state == BuiltinState.DICKE4_NOISY:
            payload |= {"noise": params.to_dict()}
        write_json(payload, ns.output)
    return EXIT_OK if bound.detected else EXIT_NEGATIVE


def _cmd_oracle(ns: argparse.Namespace) -> int:
    if ns.coefficients is not None or ns.wavenumbers is not None:
        if ns.witness is not None:
            raise ValueError("give either --witness or --coefficients/--wavenumbers, not both")
        spec = WitnessSpec(
            c=tuple(ns.coefficients or (1.0, 1.0, 1.0)),
            k=tuple(ns.wavenumbers or WitnessSpec().k),
        )
        w, label = spec.operator(), spec.constr
    else:
        label = ns.witness or BuiltinWitness.WBAR
        w = get_witness(label)

    config = OracleConfig(
        restarts=ns.restarts,
        samples=ns.samples,
        seed=ns.seed,
        tol=ns.tol,
        workers=ns.workers,
    )
    result = minimize_witness(
        w,
        restarts=config.restarts,
        samples=config.samples,
        seed=config.seed,
        tol=config.tol,
        max_sweeps=config.max_sweeps,
        workers=config.workers,
    )
    logger.info("oracle on %s: min %.12g", label, result.min_value)

    result.report(with_name=False)
    print(f"    passed = {result.passed}")
    if ns.output:
        write_json({"witness": str(label)} | result.to_dict(), ns.output)
    return EXIT_OK if result.passed else EXIT_NEGATIVE


def _cmd_calibrate(ns: argparse.Namespace) -> int:
    q = calibrate(ns.kind, ns.visibility)
    print(f"q = {q!r}")
    if ns.output:
        write_json({"kind": str(ns.kind), "visibility": ns.visibility, "q": q}, ns.output)
    return EXIT_OK


def _cmd_fidelity_bound(ns: argparse.Namespace) -> int:
    bound = fidelity_bound(ns.value)
    print(f"fidelity_lower_bound = {bound!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Random seed (default 0).")
    common.add_argument("--output", type=str, default=None, help="Write results to this file.")
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Sweep table format (default csv).",
    )
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for messages on stderr (default WARNING).",
    )

    p = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Simulate noisy 4-qubit phased Dicke states and evaluate structural entanglement witnesses.",
    )
    p.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    sw = sub.add_parser("sweep", parents=[common], help="Sweep the path dephasing q2.")
    sw.add_argument("--config", type=str, help="JSON sweep configuration.")
    sw.add_argument("--q1", type=float, help="Polarization dephasing (default 0.05).")
    sw.add_argument("--q3", type=float, help="Second beam-splitter dephasing (default 0.05).")
    sw.add_argument("--q2-start", type=float, help="First q2 (default 0).")
    sw.add_argument("--q2-stop", type=float, help="Last q2 (default 0.5).")
    sw.add_argument("--steps", type=int, help="Number of q2 points (default 51).")
    sw.add_argument("--workers", type=int, help="Worker threads (default 1).")
    sw.add_argument("--check-states", action="store_true", help="Validate every density matrix.")
    sw.set_defaults(handler=_cmd_sweep)

    wt = sub.add_parser("witness", parents=[common], help="Evaluate a witness on a state.")
    wt.add_argument(
        "state",
        nargs="?",
        default=BuiltinState.DICKE4_NOISY.value,
        help=f"One of {', '.join(BuiltinState)} or a density-matrix JSON file.",
    )
    wt.add_argument(
        "witness",
        nargs="?",
        default=BuiltinWitness.WBAR.value,
        help=f"One of {', '.join(BuiltinWitness)}.",
    )
    wt.add_argument("--q1", type=float, default=0.0)
    wt.add_argument("--q2", type=float, default=0.0)
    wt.add_argument("--q3", type=float, default=0.0)
    wt.set_defaults(handler=_cmd_witness)

    orc = sub.add_parser(
        "oracle", parents=[common], help="Check a witness is non-negative on product states."
    )
    orc.add_argument(
        "witness", nargs="?", help=f"One of {', '.join(BuiltinWitness)} (default wbar)."
    )
    orc.add_argument("--coefficients", type=float, nargs=3, metavar=("CX", "CY", "CZ"))
    orc.add_argument("--wavenumbers", type=float, nargs=3, metavar=("KX", "KY", "KZ"))
    orc.add_argument("--restarts", type=int, default=32)
    orc.add_argument("--samples", type=int, default=4096)
    orc.add_argument("--tol", type=float, default=1e-6)
    orc.add_argument("--workers", type=int, default=1)
    orc.set_defaults(handler=_cmd_oracle)

    cal = sub.add_parser(
        "calibrate", parents=[common], help="Dephasing probability from a visibility."
    )
    cal.add_argument("kind", choices=[k.value for k in VisibilityKind])
    cal.add_argument("visibility", type=float, metavar="V")
    cal.set_defaults(handler=_cmd_calibrate)

    fb = sub.add_parser(
        "fidelity-bound", parents=[common], help="Fidelity bound from a measured <W_mult>."
    )
    fb.add_argument("value", type=float, metavar="W")
    fb.set_defaults(handler=_cmd_fidelity_bound)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, ns.log_level), format=LOG_FORMAT, stream=sys.stderr
    )
    try:
        return ns.handler(ns)
    except KeyboardInterrupt:
        print("\nAborted by user.", file=sys.stderr)
        return 130
    except (ValueError, OSError) as err:
        print(f"[ERROR] {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
