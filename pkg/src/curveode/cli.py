"""Command-line interface.

Usage::

    curveode expand   --chart hyperbola --trunc 7
    curveode embed    --chart hyperbola --expr "y*(x+y)^2" --trunc 20
    curveode solve    --chart line --expr "s^2+1" --trunc 20
    curveode ivp      --chart hyperbola --expr "y*(x+y)^2" --init 0,0,1/4 --trunc 40
    curveode eval     solution.json --grid -10:10:401
    curveode verify   --n-max 8 --trunc 40
    curveode bessel   --n 3 --trunc 40
    curveode laguerre --n 4

``--chart`` takes a builtin name (``hyperbola``, ``line``), a JSON file or
an inline JSON object.  Exact numbers are always written as "p/q" strings.
Exit codes: 0 success, 1 domain error (error JSON on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .curve import expand_branch, load_chart, sharp_embed
from .diffop import DiffOperator, SeriesFunction, solve, solve_ivp
from .errors import CurveOdeError, NotPositiveDegree
from .numeric import EvalGrid, eval_function
from .series import parse_coefficient, series_to_json
from .special import bessel_series, laguerre, verification_report

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _solution_output(w: SeriesFunction, args) -> str:
    if args.format == "csv":
        if not args.grid:
            raise UsageError("--format csv needs --grid lo:hi:count")
        return eval_function(w, EvalGrid.parse(args.grid)).to_csv()
    return _dump(w.to_json())


def _operator(args) -> DiffOperator:
    chart = load_chart(args.chart)
    return DiffOperator(sharp_embed(args.expr, chart, args.trunc))


def cmd_expand(args) -> int:
    u = expand_branch(load_chart(args.chart), args.trunc)
    _emit(_dump(series_to_json(u)), args.out)
    return EXIT_OK


def cmd_embed(args) -> int:
    phi = sharp_embed(args.expr, load_chart(args.chart), args.trunc)
    _emit(_dump(series_to_json(phi)), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    op = _operator(args)
    deg = op.degree
    result = {"degree": deg, "operator": op.to_json()}
    try:
        result["basis"] = [w.to_json() for w in solve(op, args.trunc)]
    except NotPositiveDegree:
        result["basis"] = []
        result["note"] = "no solutions other than 0"
    _emit(_dump(result), args.out)
    return EXIT_OK


def cmd_ivp(args) -> int:
    try:
        init = [parse_coefficient(x.strip()) for x in args.init.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --init {args.init!r}") from None
    op = _operator(args)
    if op.degree >= 1 and len(init) != op.degree:
        raise UsageError(f"equation has degree {op.degree}; --init needs {op.degree} values, got {len(init)}")
    _emit(_solution_output(solve_ivp(op, init, args.trunc), args), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    text = sys.stdin.read() if args.solution == "-" else Path(args.solution).read_text()
    try:
        data = json.loads(text)
        w = SeriesFunction.from_json(data)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"not a solution JSON: {exc}") from None
    table = eval_function(w, EvalGrid.parse(args.grid))
    if args.format == "json":
        rows = [{"xi": r.xi, "value": r.value, "tail_bound": r.tail_bound} for r in table.rows]
        _emit(_dump({"rows": rows, "reliable": table.reliable}), args.out)
    else:
        _emit(table.to_csv(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verification_report(args.n_max, args.trunc, perturb=args.inject_fault)
    ok = all(passed for _, passed in report)
    if args.format == "json":
        checks = [{"name": n, "passed": p} for n, p in report]
        text = _dump({"checks": checks, "passed": ok})
    else:
        text = "".join(f"{'PASS' if p else 'FAIL'} {n}\n" for n, p in report)
        text += f"{'ALL PASS' if ok else 'FAILED'} ({sum(p for _, p in report)}/{len(report)})\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_bessel(args) -> int:
    _emit(_solution_output(bessel_series(args.n, args.trunc), args), args.out)
    return EXIT_OK


def cmd_laguerre(args) -> int:
    _emit(_solution_output(laguerre(args.n), args), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curveode", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",), trunc=20):
        p.add_argument("--trunc", type=int, default=trunc, help="truncation order N (default %(default)s)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        return p

    def chart_args(p, expr=True):
        p.add_argument("--chart", required=True, help="builtin name, JSON file, or inline JSON")
        if expr:
            p.add_argument("--expr", required=True, help="rational expression in the chart coordinates")

    p = common(sub.add_parser("expand", help="expand the branch u(t)"))
    chart_args(p, expr=False)
    p.set_defaults(func=cmd_expand)

    p = common(sub.add_parser("embed", help="Laurent expansion of an expression"))
    chart_args(p)
    p.set_defaults(func=cmd_embed)

    p = common(sub.add_parser("solve", help="solution basis of f(D) w = 0"))
    chart_args(p)
    p.set_defaults(func=cmd_solve)

    p = common(sub.add_parser("ivp", help="solution with given initial derivatives"), fmt=("json", "csv"))
    chart_args(p)
    p.add_argument("--init", required=True, help="comma separated w(0), w'(0), ...")
    p.add_argument("--grid", help="lo:hi:count, for --format csv")
    p.set_defaults(func=cmd_ivp)

    p = common(sub.add_parser("eval", help="sample a solution JSON on a grid"), fmt=("csv", "json"))
    p.add_argument("solution", help="solution JSON file, or - for stdin")
    p.add_argument("--grid", required=True, help="lo:hi:count with lo <= 0 <= hi")
    p.set_defaults(func=cmd_eval)

    p = common(sub.add_parser("verify", help="run the Bessel/hyperbola checks"), fmt=("text", "json"), trunc=40)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--inject-fault", action="store_true", help="perturb one coefficient (negative control)")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("bessel", help="Taylor model of J_n"), fmt=("json", "csv"), trunc=40)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", help="lo:hi:count, for --format csv")
    p.set_defaults(func=cmd_bessel)

    p = common(sub.add_parser("laguerre", help="Laguerre polynomial L_n"), fmt=("json", "csv"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", help="lo:hi:count, for --format csv")
    p.set_defaults(func=cmd_laguerre)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    argv = []
    while raw:
        a = raw.pop(0)
        # allow "--grid -10:10:401" despite the leading minus
        if a in ("--grid", "--init") and raw and raw[0].startswith("-"):
            a = f"{a}={raw.pop(0)}"
        argv.append(a)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stdout.write(_dump({"error": "UsageError", "message": str(exc)}))
        return EXIT_USAGE
    except CurveOdeError as exc:
        sys.stdout.write(_dump({"error": exc.kind, "message": str(exc)}))
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        sys.stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
