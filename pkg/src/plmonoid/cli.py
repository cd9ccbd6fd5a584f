"""Command-line interface.

Exit codes: 0 success (and passing sweeps), 1 sweep or check failure, 2 parse
or flag error, 3 dimension mismatch, 4 stochastic validation failure.  All
JSON output has sorted keys; verify reports are byte-stable across runs, with
measured time going to stderr instead of the report.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import classify, multiply
from .errors import (
    DimensionMismatchError,
    MatrixParseError,
    NotLeftStochasticError,
    PlmError,
    RootFindingError,
)
from .formats import (
    dumps_compact,
    dumps_report,
    parse_plm_text,
    parse_stochastic_text,
    plm_to_colmap_line,
    plm_to_text,
)
from .spectral import DEFAULT_TOL, eigen_check, periodicity
from .stochastic import decompose, recompose
from .verify import (
    sweep_decompose,
    sweep_eigen,
    sweep_multiplication,
    sweep_period,
    sweep_prerow,
)

MAX_PLAIN_ENUMERATE = 8


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MatrixParseError(path, None, f"cannot read file: {exc.strerror}") from None


def _load_plm(path: str):
    return parse_plm_text(_read(path), path)


def _load_stochastic(path: str):
    return parse_stochastic_text(_read(path), path)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        return p

    p = add("mul", "multiply two PLM files")
    p.add_argument("a")
    p.add_argument("b")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON only")
    fmt.add_argument("--text", action="store_true", help="dense text only")

    p = add("classify", "structural class of a PLM file")
    p.add_argument("matrix")

    p = add("period", "periodicity verdict of a PLM file")
    p.add_argument("matrix")

    p = add("eigen", "eigenvalue report of a PLM file")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = add("decompose", "decompose a left stochastic matrix file into PLMs")
    p.add_argument("matrix")
    p.add_argument("--check", action="store_true", help="re-verify the round trip first")

    p = add("enumerate", "list all PLMs of a dimension as column-map lines")
    p.add_argument("d", type=int)
    p.add_argument("--force", action="store_true", help="allow d above 8")

    p = add("verify", "run a verification sweep")
    p.add_argument("sweep", choices=["mul", "period", "eigen", "prerow", "decompose", "all"])
    p.add_argument("d", type=int)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    return parser


def cmd_mul(args) -> int:
    product = multiply(_load_plm(args.a), _load_plm(args.b))
    blob = {
        "dim": product.dim,
        "colmap": list(product.colmap),
        "classification": classify(product).to_json_dict(),
    }
    if args.json:
        _emit(dumps_compact(blob), args.out)
    elif args.text:
        _emit(plm_to_text(product), args.out)
    else:
        _emit(plm_to_text(product) + dumps_compact(blob), args.out)
    return 0


def cmd_classify(args) -> int:
    verdict = classify(_load_plm(args.matrix))
    _emit(dumps_compact(verdict.to_json_dict()), args.out)
    return 0


def cmd_period(args) -> int:
    verdict = periodicity(_load_plm(args.matrix))
    _emit(dumps_compact(verdict.to_json_dict()), args.out)
    return 0


def _bad_tol(tol: float) -> bool:
    if tol <= 0:
        print(f"error: --tol must be positive, got {tol}", file=sys.stderr)
        return True
    return False


def cmd_eigen(args) -> int:
    if _bad_tol(args.tol):
        return 2
    report = eigen_check(_load_plm(args.matrix), tol=args.tol)
    _emit(dumps_compact(report.to_json_dict()), args.out)
    return 0


def cmd_decompose(args) -> int:
    m = _load_stochastic(args.matrix)
    dec = decompose(m)
    if args.check and recompose(dec) != m:
        print("error: recomposition does not reproduce the input", file=sys.stderr)
        return 1
    _emit(dumps_report(dec.to_json_dict()), args.out)
    return 0


def cmd_enumerate(args) -> int:
    if args.d < 1:
        print(f"error: dimension must be >= 1, got {args.d}", file=sys.stderr)
        return 2
    if args.d > MAX_PLAIN_ENUMERATE and not args.force:
        print(
            f"error: d={args.d} means {args.d}**{args.d} lines; pass --force to insist",
            file=sys.stderr,
        )
        return 2
    from .verify import enumerate_plms

    lines = "".join(plm_to_colmap_line(p) + "\n" for p in enumerate_plms(args.d))
    _emit(lines, args.out)
    return 0


def _run_sweep(name: str, args):
    if name == "mul":
        return sweep_multiplication(args.d)
    if name == "period":
        return sweep_period(args.d)
    if name == "eigen":
        return sweep_eigen(args.d, tol=args.tol)
    if name == "prerow":
        return sweep_prerow(args.d)
    return sweep_decompose(args.d, n_cases=args.cases, seed=args.seed)


def cmd_verify(args) -> int:
    if _bad_tol(args.tol):
        return 2
    names = ["mul", "period", "eigen", "prerow", "decompose"] if args.sweep == "all" else [args.sweep]
    reports = [_run_sweep(name, args) for name in names]
    for report in reports:
        print(f"{report.sweep}: {report.elapsed_ms} ms", file=sys.stderr)
    if len(reports) == 1:
        payload = reports[0].to_json_dict(stable=True)
    else:
        payload = {
            "d": args.d,
            "reports": {r.sweep: r.to_json_dict(stable=True) for r in reports},
        }
    _emit(dumps_report(payload), args.out)
    return 0 if all(r.passed for r in reports) else 1


COMMANDS = {
    "mul": cmd_mul,
    "classify": cmd_classify,
    "period": cmd_period,
    "eigen": cmd_eigen,
    "decompose": cmd_decompose,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except MatrixParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DimensionMismatchError as exc:
        print(f"error: dimension mismatch: {exc}", file=sys.stderr)
        return 3
    except NotLeftStochasticError as exc:
        print(f"error: not left stochastic: {exc}", file=sys.stderr)
        return 4
    except RootFindingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PlmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
