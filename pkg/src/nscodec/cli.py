"""Command-line interface: build, verify, simulate, and tabulate codes.

Exit codes: 0 on success, 1 when a verification or simulation misses its
tolerance (with residual diagnostics printed), 2 on usage errors (argparse's
own convention) including configurations refused by the memory cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

import numpy as np

from .channel import (
    NoiseModel,
    ResourceLimitError,
    make_code,
    rate_table,
    rate_table_csv,
    rate_table_json_dict,
    simulate,
)
from .encoder import (
    AlignmentError,
    build_encoder,
    load_encoder,
    reference_encoder_qubit,
    save_encoder,
    verify_block_structure,
)
from .linalg import random_special_unitary

_DEFAULT_TOL = {"su": 1e-10, "sl": 1e-8}


def _dimension(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"d must be >= 2, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _emit_json(payload, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_build_encoder(args: argparse.Namespace) -> int:
    encoder = build_encoder(args.d, args.seed)
    save_encoder(encoder, args.output)
    print(f"wrote d={args.d} encoder ({encoder.matrix.shape[0]} columns) to {args.output}")
    return 0


def _cmd_export_reference(args: argparse.Namespace) -> int:
    save_encoder(reference_encoder_qubit(), args.output)
    print(f"wrote d=2 reference encoder to {args.output}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.encoder:
        encoder = load_encoder(args.encoder)
        if args.d is not None and args.d != encoder.d:
            print(
                f"error: --d {args.d} conflicts with encoder file (d={encoder.d})",
                file=sys.stderr,
            )
            return 2
    else:
        encoder = build_encoder(args.d if args.d is not None else 2, args.seed)
    reports = []
    for trial in range(args.trials):
        rng = np.random.default_rng([args.seed, trial])
        w = random_special_unitary(encoder.d, rng)
        reports.append(verify_block_structure(encoder, w, args.tol))
    max_ns = max(r.residual_ns for r in reports)
    max_off = max(r.residual_offdiag for r in reports)
    failed = [i for i, r in enumerate(reports) if not r.passed]
    payload = {
        "command": "verify",
        "d": encoder.d,
        "generator": encoder.generator,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "max_residual_ns": max_ns,
        "max_residual_offdiag": max_off,
        "failed_trials": failed,
        "passed": not failed,
        "generated_at": _timestamp(),
    }
    if args.output:
        _emit_json(payload, args.output)
    print(
        f"verify d={encoder.d}: {args.trials} samples, "
        f"max residual_ns={max_ns:.3e}, max residual_offdiag={max_off:.3e}, "
        f"tol={args.tol:g}: {'PASS' if not failed else 'FAIL'}"
    )
    if failed:
        for i in failed:
            r = reports[i]
            print(
                f"  sample {i}: residual_ns={r.residual_ns:.3e}, "
                f"residual_offdiag={r.residual_offdiag:.3e}",
                file=sys.stderr,
            )
        return 1
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    tol = args.tol if args.tol is not None else _DEFAULT_TOL[args.noise]
    code = make_code(args.d, args.k, seed=args.seed)
    report = simulate(code, NoiseModel(kind=args.noise, seed=args.seed), args.trials)
    passed = report.max_infidelity < tol
    payload = report.to_json_dict()
    payload.update(
        {"command": "simulate", "tol": tol, "passed": passed, "generated_at": _timestamp()}
    )
    if args.output:
        _emit_json(payload, args.output)
    print(
        f"simulate d={args.d} k={args.k} noise={args.noise}: {args.trials} trials, "
        f"max infidelity={report.max_infidelity:.3e}, "
        f"max state residual={report.max_state_residual:.3e}, "
        f"tol={tol:g}: {'PASS' if passed else 'FAIL'}"
    )
    if not passed:
        print(
            f"  worst per-slot infidelity: "
            f"{[f'{x:.3e}' for x in report.worst_infidelity_per_slot]}",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_rate_table(args: argparse.Namespace) -> int:
    rows = rate_table(args.d, args.kmax)
    if args.format == "csv":
        text = rate_table_csv(rows)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit_json({"command": "rate-table", "rows": rate_table_json_dict(rows)}, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nscodec",
        description="Collective-noise-immune qudit encoders: build, verify, simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-encoder", help="construct an encoder and write it as JSON")
    p.add_argument("--d", type=_dimension, default=2, help="local dimension (default 2)")
    p.add_argument("--seed", type=int, default=0, help="alignment seed (default 0)")
    p.add_argument("--output", required=True, help="path for the encoder JSON")
    p.set_defaults(func=_cmd_build_encoder)

    p = sub.add_parser("verify", help="check the block structure on Haar samples")
    p.add_argument("--d", type=_dimension, default=None, help="local dimension (default 2)")
    p.add_argument("--encoder", default=None, help="encoder JSON to verify instead of building")
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="optional path for the JSON report")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo noise run on a recursive code")
    p.add_argument("--d", type=_dimension, default=2)
    p.add_argument("--k", type=_positive_int, default=1, help="number of data qudits")
    p.add_argument("--noise", choices=("su", "sl"), default="su")
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--tol", type=_positive_float, default=None,
                   help="pass threshold on max infidelity (default 1e-10 su, 1e-8 sl)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="optional path for the JSON report")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("rate-table", help="exact encoding rates k/(kd+1)")
    p.add_argument("--d", type=_dimension, default=2)
    p.add_argument("--kmax", type=_positive_int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_rate_table)

    p = sub.add_parser("export-reference", help="write the hand-built d=2 encoder")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_export_reference)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AlignmentError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
