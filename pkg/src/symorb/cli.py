"""Command-line front end: ``symorb series|degrees|ring|verify``.

Exit codes: 0 success, 1 failed verification or invalid model, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .permgroup import (
    chen_ruan_degree,
    compose,
    conjugacy_pair_representatives,
    excess_euler_degree,
    orbit_count,
    symmetric_group,
)
from .series import (
    GradedDimension,
    equivariant_euler_series,
    loop_series,
    macdonald_series,
    orbifold_series,
    symmetric_euler_series,
)

MAX_DEGREES_N = 7


class UsageError(Exception):
    pass


def _betti(text: str) -> GradedDimension:
    try:
        return GradedDimension.parse(text)
    except ValueError as exc:
        raise UsageError(f"malformed betti list {text!r}: {exc}") from None


def _emit(args, doc, lines) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def run_series(args) -> int:
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    if args.kind == "euler":
        if args.chi is None:
            raise UsageError("series euler needs --chi")
        fn = equivariant_euler_series if args.equivariant else symmetric_euler_series
        s = fn(args.chi, args.order)
    elif args.kind == "loop":
        if args.loop_betti is None:
            raise UsageError("series loop needs --loop-betti")
        s = loop_series(_betti(args.loop_betti), args.order)
    else:
        if args.betti is None:
            raise UsageError(f"series {args.kind} needs --betti")
        fn = macdonald_series if args.kind == "macdonald" else orbifold_series
        s = fn(_betti(args.betti), args.order)
    _emit(args, s.to_json(), s.lines())
    return 0


DEGREE_COLUMNS = ("tau", "sigma", "O_tau", "O_sigma", "O_pair", "O_product", "deg_e", "deg_CR", "gap")


def degree_rows(n: int, dim: int, up_to_conjugacy: bool):
    pairs = (
        conjugacy_pair_representatives(n)
        if up_to_conjugacy
        else ((t, s) for t in symmetric_group(n) for s in symmetric_group(n))
    )
    for tau, sigma in pairs:
        deg_e = excess_euler_degree(tau, sigma, dim)
        deg_cr = chen_ruan_degree(tau, sigma, dim)
        yield (
            tau.word(),
            sigma.word(),
            orbit_count(tau),
            orbit_count(sigma),
            orbit_count(tau, sigma),
            orbit_count(compose(tau, sigma)),
            deg_e,
            deg_cr,
            deg_e - 2 * deg_cr,
        )


def run_degrees(args) -> int:
    if not 1 <= args.n <= MAX_DEGREES_N:
        raise UsageError(f"--n must be between 1 and {MAX_DEGREES_N}")
    if args.dim < 1 or args.dim % 2:
        raise UsageError("the Chen-Ruan degree needs a positive even --dim")
    rows = degree_rows(args.n, args.dim, args.up_to_conjugacy)
    if args.json:
        doc = {
            "n": args.n,
            "dim": args.dim,
            "up_to_conjugacy": args.up_to_conjugacy,
            "rows": [dict(zip(DEGREE_COLUMNS, r)) for r in rows],
        }
        print(json.dumps(doc, indent=2))
    else:
        out = sys.stdout
        out.write("\t".join(DEGREE_COLUMNS) + "\n")
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")
    return 0


def _resolve_model(args):
    from .ringmodel import ModelError, builtin_model, load_model

    if args.model_file:
        return load_model(args.model_file)
    if args.model is None or args.dim is None:
        raise UsageError("ring table needs --model and --dim, or --model-file")
    try:
        return builtin_model(args.model, args.dim)
    except ModelError as exc:
        raise UsageError(str(exc)) from None


def run_ring(args) -> int:
    from .ringmodel import GysinPreimageError, ModelError
    from .ringmodel.table import TableSizeError, multiplication_table, table_diff

    try:
        model = _resolve_model(args)
    except ModelError as exc:
        print(f"model validation failed: {exc}", file=sys.stderr)
        return 1
    uses = ["vip", "cs"] if args.product == "both" else [args.product]
    try:
        tables = [multiplication_table(model, args.n, use) for use in uses]
    except TableSizeError as exc:
        raise UsageError(str(exc)) from None
    except GysinPreimageError as exc:
        print(f"cs product failed: {exc}", file=sys.stderr)
        return 1
    diff = table_diff(*tables) if len(tables) == 2 else []
    violations = sum(t.degree_violations for t in tables)
    if args.json:
        doc = tables[0].to_json() if len(tables) == 1 else {t.use: t.to_json() for t in tables}
        if len(tables) == 2:
            names = [b.name(model) for b in tables[0].basis]
            doc["diff"] = [{"left": names[i], "right": names[j]} for i, j in diff]
        print(json.dumps(doc, indent=2))
    else:
        lines = []
        for t in tables:
            lines.extend(t.lines())
        if len(tables) == 2:
            lines.append("# diff (vip vs cs):")
            lines.extend(f"  e{i} * e{j}" for i, j in diff)
        print("\n".join(lines))
    if violations:
        print(f"{violations} products violate the degree law", file=sys.stderr)
    return 1 if diff or violations else 0


def run_verify(args) -> int:
    from .verify import run_suite

    if args.max_n is not None and args.max_n < 1:
        raise UsageError("--max-n must be positive")
    passed = failed = 0
    for case in run_suite(args.suite, args.max_n):
        print(case.line(), flush=True)
        if case.passed:
            passed += 1
        else:
            failed += 1
    print(f"summary: {passed} passed, {failed} failed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symorb", description="Symmetric products, their orbifolds and loop products.")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("series", help="generating functions")
    ps.add_argument("kind", choices=["macdonald", "orbifold", "loop", "euler"])
    ps.add_argument("--betti", help="comma separated Betti numbers from degree 0")
    ps.add_argument("--loop-betti", help="Betti numbers of the free loop space, truncated")
    ps.add_argument("--chi", type=int, help="Euler characteristic")
    ps.add_argument("--equivariant", action="store_true", help="orbifold Euler characteristics")
    ps.add_argument("--order", type=int, default=10)
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=run_series)

    pd = sub.add_parser("degrees", help="excess and Chen-Ruan degrees over pairs in S_n")
    pd.add_argument("--n", type=int, required=True)
    pd.add_argument("--dim", type=int, required=True)
    pd.add_argument("--up-to-conjugacy", action="store_true")
    pd.add_argument("--json", action="store_true")
    pd.set_defaults(func=run_degrees)

    pr = sub.add_parser("ring", help="multiplication tables of the invariant inertia ring")
    rsub = pr.add_subparsers(dest="ring_command", required=True)
    pt = rsub.add_parser("table")
    pt.add_argument("--model", choices=["sphere", "torus"])
    pt.add_argument("--dim", type=int)
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--product", choices=["vip", "cs", "both"], default="vip")
    pt.add_argument("--model-file")
    pt.add_argument("--json", action="store_true")
    pt.set_defaults(func=run_ring)

    pv = sub.add_parser("verify", help="run invariant suites")
    pv.add_argument("--suite", choices=["macdonald", "series", "degrees", "cocycle", "ring", "all"], default="all")
    pv.add_argument("--max-n", type=int)
    pv.set_defaults(func=run_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
