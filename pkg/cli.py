"""
Command-line front end.

    cg-lab constants --n-min 3 --n-max 6 --c-list 1,2
    cg-lab scalar --model atiyah --n 2 --c 1 --k 2 --point 0,0/0,0,0
    cg-lab verify atiyah --n 2 --c 1 --k 1 --samples 5
    cg-lab region --n 2 --c-range=-1.5:2:15 --k-range=0.25:10:40 --mode both

Exit codes: 0 success, 1 verification failure, 2 usage or invalid
parameters, 3 inadmissible point or degenerate metric.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .core.errors import CGLabError, InvalidParameterError
from .engine import Engine
from .polars_utils.tables import FORMATS, render
from .verification.cases import CASES
from .verification.region import RegionScanConfig, ScanMode

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def parse_range(text: str) -> Tuple[float, float, int]:
    """'a:b:steps' -> (a, b, steps)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:steps, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:steps, got {text!r}") from None


def _floats(text: str) -> List[float]:
    text = text.strip()
    return [float(v) for v in text.split(",")] if text else []


def parse_point(text: str) -> Tuple[Optional[List[float]], Optional[List[float]]]:
    """'x1,...,xn/m1,...,mr' -> (x, mu); either side may be left empty."""
    base, _, fiber = text.partition("/")
    try:
        x, mu = _floats(base), _floats(fiber)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x1,...,xn/m1,...,mr, got {text!r}") from None
    return (x or None), (mu or None)


def parse_float_list(text: str) -> List[float]:
    try:
        return _floats(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default depends on command).")
    common.add_argument("--out", type=Path, default=None, help="Output path (default: standard output).")
    common.add_argument("--seed", type=int, default=0, help="Seed for sampled checks (default: 0).")
    common.add_argument("--threads", type=int, default=None, help="Worker count (default: min(8, cpus); capped by CG_LAB_THREADS).")
    common.add_argument("--debug", action="store_true", help="Log every stage to stderr.")

    parser = argparse.ArgumentParser(
        prog="cg-lab",
        description="Generalized Cheeger-Gromoll metrics: closed forms checked against a curvature oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="Positivity constants C_n and K(n, c).")
    p.add_argument("--n-min", type=int, default=2, dest="n_min")
    p.add_argument("--n-max", type=int, default=6, dest="n_max")
    p.add_argument("--c-list", type=parse_float_list, default=[], dest="c_list",
                   help="Comma-separated curvatures c for K(n, c) columns.")

    p = sub.add_parser("scalar", parents=[common], help="Scalar curvature at one point, closed form and oracle.")
    p.add_argument("--model", choices=("tm", "atiyah"), required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--k", type=float, default=None, help="Atiyah parameter k > 0 (default: 1).")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--point", type=parse_point, default=(None, None),
                   help="x1,...,xn/m1,...,mr (default: origin of the zero section).")

    p = sub.add_parser("verify", parents=[common], help="Closed form versus independent computation.")
    p.add_argument("case", help=f"One of: {', '.join(CASES)}.")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--p", type=float, default=None, help="Default depends on the case.")
    p.add_argument("--q", type=float, default=None, help="Default depends on the case.")
    p.add_argument("--r", type=int, default=3, help="Fiber rank for the fiber and derivative cases.")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--tol", type=float, default=None, help="Override the case's tolerance.")

    defaults = RegionScanConfig()
    p = sub.add_parser("region", parents=[common], help="(c, k) scan of the positivity region.")
    p.add_argument("--n", type=int, default=defaults.n)
    p.add_argument("--c-range", type=parse_range, dest="c_range",
                   default=(defaults.c_min, defaults.c_max, defaults.c_steps))
    p.add_argument("--k-range", type=parse_range, dest="k_range",
                   default=(defaults.k_min, defaults.k_max, defaults.k_steps))
    p.add_argument("--samples", type=int, default=defaults.sample_points,
                   help="Fiber samples per cell in empirical mode.")
    p.add_argument("--mode", choices=[m.value for m in ScanMode], default=ScanMode.BOTH.value)
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def cmd_constants(engine: Engine, args: argparse.Namespace) -> int:
    table = engine.constants(args.n_min, args.n_max, args.c_list)
    _emit(render(table, args.format or "csv"), args.out)
    return EXIT_OK


def cmd_scalar(engine: Engine, args: argparse.Namespace) -> int:
    x, mu = args.point
    record = engine.scalar(args.model, n=args.n, c=args.c, k=args.k, p=args.p, q=args.q, x=x, mu=mu)
    _emit(render(record, args.format or "json"), args.out)
    return EXIT_OK


def cmd_verify(engine: Engine, args: argparse.Namespace) -> int:
    report = engine.verify(
        args.case,
        tolerance=args.tol,
        n=args.n, c=args.c, k=args.k, p=args.p, q=args.q, r=args.r, samples=args.samples,
    )
    _emit(render(report.to_dict(), args.format or "json"), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_region(engine: Engine, args: argparse.Namespace) -> int:
    c_min, c_max, c_steps = args.c_range
    k_min, k_max, k_steps = args.k_range
    config = RegionScanConfig(
        n=args.n,
        c_min=c_min, c_max=c_max, c_steps=c_steps,
        k_min=k_min, k_max=k_max, k_steps=k_steps,
        sample_points=args.samples,
        seed=args.seed,
    )
    frame = engine.region(config, args.mode)
    _emit(render(frame, args.format or "csv"), args.out)
    return EXIT_OK


COMMANDS = {
    "constants": cmd_constants,
    "scalar": cmd_scalar,
    "verify": cmd_verify,
    "region": cmd_region,
}


def run(args: argparse.Namespace) -> int:
    engine = Engine(debug=args.debug, threads=args.threads, seed=args.seed)
    return COMMANDS[args.command](engine, args)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args)
    except InvalidParameterError as exc:
        sys.stderr.write(f"cg-lab: error: {exc}\n")
        return EXIT_USAGE
    except CGLabError as exc:
        sys.stderr.write(f"cg-lab: error: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
