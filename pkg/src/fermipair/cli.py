"""Command-line interface: classify, solve, export, and verify.

Six subcommands cover the library surface::

    fermipair classify  --lambda -20 --mu -8
    fermipair spectrum  --lambda -20 --mu -8 --k1 1.0 --k2 0.5
    fermipair curves    --side both --output curves.csv --svg curves.svg
    fermipair sweep     --lambda-min -30 --lambda-max 30 --lambda-steps 61 \\
                        --mu-min -10 --mu-max 10 --mu-steps 41 --output sweep.csv
    fermipair verify    --seed 0 --only 1,3,4
    fermipair constants

JSON payloads carry a top-level schema_version; CSV files carry headers,
use '.' as the decimal separator, and print floats with 17 significant
digits.  Exit codes: 0 success, 1 runtime or verification failure, 2
invalid configuration, 3 degenerate band (K = (pi, pi)).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .acceptance import run_acceptance
from .atlas import boundary_curves, classify
from .determinant import CouplingPair, constants
from .errors import DegenerateBandError, FermipairError
from .solver import spectrum
from .torus import DEFAULT_GRID_N, GridSpec
from .torus import Quasimomentum

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

_GRID_ENV = "FERMIPAIR_GRID_N"


def _fmt(value: float) -> str:
    """CSV float format: 17 significant digits, '.' decimal separator."""
    return format(float(value), ".17g")


def _grid_n_from_env() -> int:
    raw = os.environ.get(_GRID_ENV)
    if raw is None:
        return DEFAULT_GRID_N
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{_GRID_ENV} must be an integer, got {raw!r}") from None
    GridSpec(n)
    return n


def _emit_json(payload: dict, output: "str | None") -> None:
    text = json.dumps(payload, indent=2)
    if output is None:
        print(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _open_csv(output: "str | None"):
    if output is None:
        return sys.stdout, False
    return open(output, "w", encoding="utf-8", newline=""), True


def _cmd_classify(args: argparse.Namespace) -> int:
    label = classify(CouplingPair(args.lam, args.mu))
    _emit_json({
        "schema_version": SCHEMA_VERSION,
        "lambda": args.lam,
        "mu": args.mu,
        "region": label.tag,
        "minus_component": label.minus_component,
        "plus_component": label.plus_component,
        "n_below": label.expected_n_below,
        "n_above": label.expected_n_above,
        "on_boundary": label.on_boundary,
    }, args.output)
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    grid_n = args.grid_n if args.grid_n is not None else _grid_n_from_env()
    k = Quasimomentum(args.k1, args.k2)
    report = spectrum(CouplingPair(args.lam, args.mu), k, GridSpec(grid_n))
    _emit_json({
        "schema_version": SCHEMA_VERSION,
        "lambda": args.lam,
        "mu": args.mu,
        "k": [report.k.k1, report.k.k2],
        "grid_n": grid_n,
        "band": list(report.band),
        "eigenvalues": [
            {"z": ev.z, "side": ev.side, "multiplicity": ev.multiplicity}
            for ev in report.eigenvalues
        ],
        "n_below": report.n_below,
        "n_above": report.n_above,
        "boundary_uncertain": report.boundary_uncertain,
    }, args.output)
    return EXIT_OK


def _cmd_curves(args: argparse.Namespace) -> int:
    sides = ("below", "above") if args.side == "both" else (args.side,)
    branches = [branch for side in sides
                for branch in boundary_curves(side, (args.mu_min, args.mu_max),
                                              args.samples)]
    handle, owned = _open_csv(args.output)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["side", "branch", "mu", "lambda"])
        for branch in branches:
            for mu, lam in zip(branch.mu, branch.lam):
                writer.writerow([branch.side, branch.branch, _fmt(mu), _fmt(lam)])
    finally:
        if owned:
            handle.close()
    if args.svg:
        from .figures import save_curve_figure

        save_curve_figure(args.svg, branches)
    return EXIT_OK


def _sweep_row(pair: tuple[float, float]) -> tuple[float, float, str, "int | None", "int | None"]:
    lam, mu = pair
    label = classify(CouplingPair(lam, mu))
    return lam, mu, label.tag, label.expected_n_below, label.expected_n_above


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.lambda_steps < 1 or args.mu_steps < 1:
        raise ValueError("step counts must be at least 1")
    if args.threads < 1:
        raise ValueError("--threads must be at least 1")

    def axis(lo: float, hi: float, steps: int) -> list[float]:
        if steps == 1:
            return [lo]
        return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]

    grid = [(lam, mu)
            for lam in axis(args.lambda_min, args.lambda_max, args.lambda_steps)
            for mu in axis(args.mu_min, args.mu_max, args.mu_steps)]
    if args.threads == 1:
        rows = [_sweep_row(pair) for pair in grid]
    else:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(_sweep_row, grid))

    handle, owned = _open_csv(args.output)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["lambda", "mu", "region", "n_below", "n_above"])
        for lam, mu, tag, n_below, n_above in rows:
            writer.writerow([
                _fmt(lam), _fmt(mu), tag,
                "" if n_below is None else n_below,
                "" if n_above is None else n_above,
            ])
    finally:
        if owned:
            handle.close()
    if args.svg:
        from .figures import save_region_figure

        save_region_figure(args.svg, [(lam, mu, tag) for lam, mu, tag, _, _ in rows])
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_acceptance(seed=args.seed, only=args.only)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def _cmd_constants(args: argparse.Namespace) -> int:
    cst = constants()
    _emit_json({
        "schema_version": SCHEMA_VERSION,
        "mu0_minus": cst.mu0_minus,
        "mu0_plus": cst.mu0_plus,
        "mu1_minus": cst.mu1_minus,
        "mu1_plus": cst.mu1_plus,
        "kappa": cst.kappa,
        "lambda_threshold_below": cst.lambda_threshold_below,
        "lambda_threshold_above": cst.lambda_threshold_above,
    }, args.output)
    return EXIT_OK


def _parse_only(raw: str) -> set[int]:
    values = {int(part) for part in raw.split(",") if part.strip()}
    if not values or not values <= set(range(1, 11)):
        raise ValueError
    return values


def _add_coupling_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lambda", dest="lam", type=float, required=True,
                        help="nearest-neighbor coupling strength")
    parser.add_argument("--mu", type=float, required=True,
                        help="next-nearest-neighbor coupling strength")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermipair",
        description="Bound states of two identical fermions on the square "
                    "lattice: spectra, phase regions, and verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region of a coupling pair")
    _add_coupling_arguments(p)
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("spectrum", help="discrete eigenvalues at one (coupling, K)")
    _add_coupling_arguments(p)
    p.add_argument("--k1", type=float, default=0.0, help="quasimomentum component")
    p.add_argument("--k2", type=float, default=0.0, help="quasimomentum component")
    p.add_argument("--grid-n", type=int, default=None,
                   help=f"quadrature grid per axis (default {_GRID_ENV} "
                        f"or {DEFAULT_GRID_N})")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("curves", help="phase-boundary curves as CSV")
    p.add_argument("--side", choices=("below", "above", "both"), default="both")
    p.add_argument("--mu-min", type=float, default=-12.0)
    p.add_argument("--mu-max", type=float, default=12.0)
    p.add_argument("--samples", type=int, default=481)
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.add_argument("--svg", help="also render the curves to this figure file")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("sweep", help="classify a coupling grid as CSV")
    p.add_argument("--lambda-min", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--lambda-steps", type=int, required=True)
    p.add_argument("--mu-min", type=float, required=True)
    p.add_argument("--mu-max", type=float, required=True)
    p.add_argument("--mu-steps", type=int, required=True)
    p.add_argument("--threads", type=int, default=1,
                   help="rows are classified in a thread pool of this size")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.add_argument("--svg", help="also render the region map to this figure file")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed for the randomized criteria")
    p.add_argument("--only", type=_parse_only, default=None, metavar="N[,N...]",
                   help="run only these criterion numbers (1-10)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("constants", help="threshold constants as JSON")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_constants)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateBandError as exc:
        print(f"fermipair: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"fermipair: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FermipairError, OSError) as exc:
        print(f"fermipair: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
