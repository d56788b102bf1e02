"""Command-line interface: ``lrkm {solve,table,curves,selftest}``.

Exit status is 0 on success, 1 when a ``--check`` comparison or a selftest
fails, and 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .. import precision as _precision
from ..bratu import solve_theta
from ..errors import DomainError, LRKMError
from ..solver import SolverConfig
from . import reference
from .curves import format_plot_data, run_error_curves
from .selftest import run_selftest
from .tables import ExperimentSpec, TableResult, check_table, run_spec, run_table

__all__ = ["main", "build_parser"]

log = logging.getLogger("lrkm")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_precision(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", choices=_precision.MODES, default=None,
                   help=f"working precision (default: ${_precision.ENV_VAR} or standard)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrkm",
        description="Legendre reproducing-kernel solver for the fractional Bratu problem.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one problem instance and sample the solution")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--n", type=int, default=30, help="number of fixed-point iterations")
    p.add_argument("--points", type=_float_list, default=None,
                   help="comma-separated evaluation points in (0, 1) (default 0.1..0.9)")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")
    _add_precision(p)

    p = sub.add_parser("table", help="reproduce a published table")
    p.add_argument("table_id", type=int, choices=sorted(reference.TABLES))
    p.add_argument("--m", type=_int_list, default=None,
                   help="override the m value(s), comma-separated")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--points", type=_float_list, default=None,
                   help="rows to keep; only points on the 0.1..0.9 grid are used")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default="-")
    p.add_argument("--check", action="store_true",
                   help="compare with the published values; exit 1 on any failure")
    _add_precision(p)

    p = sub.add_parser("curves", help="error curves of y and its first four derivatives")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--format", choices=("plotdata",), default="plotdata")
    p.add_argument("--out", default="-",
                   help="directory for error_r<r>.dat files ('-' prints all blocks)")
    _add_precision(p)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--format", choices=("text",), default="text")
    return parser


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _render(result: TableResult, fmt: str) -> str:
    if fmt == "csv":
        return result.to_csv()
    if fmt == "json":
        return result.to_json()
    return result.to_text()


def _cmd_solve(args) -> int:
    # reject out-of-domain parameters up front rather than as failed cells
    SolverConfig(alpha=args.alpha, m=args.m, n_iters=args.n)
    if args.alpha == 2.0:
        solve_theta(args.lam)
    elif not args.lam > 0.0:
        raise DomainError(f"lambda must be positive, got {args.lam!r}")
    spec = ExperimentSpec(
        name="solve",
        lambdas=(args.lam,),
        alphas=(args.alpha,),
        m_values=(args.m,),
        n_iters=args.n,
        eval_points=reference.GRID if args.points is None else tuple(args.points),
        precision=args.precision,
    )
    result = run_spec(spec, table_id="solve")
    _emit(_render(result, args.format), args.out)
    return 1 if result.failures else 0


def _cmd_table(args) -> int:
    result = run_table(args.table_id, m=args.m, n_iters=args.n, points=args.points,
                       precision=args.precision)
    _emit(_render(result, args.format), args.out)
    status = 0
    if args.check:
        outcomes = check_table(result)
        stream = sys.stdout if args.format == "text" and args.out == "-" else sys.stderr
        for o in outcomes:
            print(o.line(), file=stream)
        status = 0 if all(o.passed for o in outcomes) else 1
    return status


def _cmd_curves(args) -> int:
    curves = run_error_curves(args.lam, m=args.m, n_iters=args.n, alpha=args.alpha,
                              precision=args.precision)
    blocks = []
    for r, (xs, err) in curves.items():
        header = f"x abs_error_r{r} lambda={args.lam:g} m={args.m} n={args.n}"
        text = format_plot_data(xs, err, header)
        if args.out == "-":
            blocks.append(text)
        else:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / f"error_r{r}.dat").write_text(text)
    if blocks:
        sys.stdout.write("\n\n".join(blocks))
    return 0


def _cmd_selftest(args) -> int:
    outcomes = run_selftest()
    for o in outcomes:
        print(o.line())
    return 0 if all(o.passed for o in outcomes) else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "table": _cmd_table,
    "curves": _cmd_curves,
    "selftest": _cmd_selftest,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (LRKMError, ValueError) as exc:
        print(f"lrkm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
