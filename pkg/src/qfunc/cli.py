"""Command-line front end.

Exit codes: 0 success / identity holds, 1 mathematical failure (nonzero
residual, solver disagreement), 2 usage or input error.  Every flag may also
be set through an environment variable ``QFUNC_<FLAG>`` (dashes become
underscores, e.g. ``QFUNC_MAX_ORDER``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import series as S
from .equations import (
    DegenerationKind,
    EquationId,
    adjudicate_thm2_4,
    degeneration_check,
    residual,
    solve_operator,
    solve_recurrence,
)
from .qcore import format_rational, make_context, parse_rational
from .qops import OperatorId, apply_operator
from .serialize import dumps, loads, parse_poly, render
from .suite import DEFAULT_QS, run_matrix

DEFAULT_MAX_ORDER = 16
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env(flag: str, default=None):
    return os.environ.get("QFUNC_" + flag.upper().replace("-", "_"), default)


def _add(p: argparse.ArgumentParser, flag: str, **kw) -> None:
    kw.setdefault("default", None)
    kw["default"] = _env(flag, kw["default"])
    p.add_argument("--" + flag, **kw)


def _input_flags(p: argparse.ArgumentParser, name: str = "in") -> None:
    _add(p, name, metavar="FILE", help="series file: canonical JSON or an inline polynomial")
    _add(p, "expr", help="inline polynomial given on the command line, e.g. 'a^2 + b'")
    _add(p, "vars", help="comma-separated variable list for inline input")
    _add(p, "q", help="q for inline input (JSON files carry their own q)")
    _add(p, "exact-to", type=int, help="exactness bound for inline input (default: max order)")
    _add(p, "max-order", type=int, default=DEFAULT_MAX_ORDER)


def _role_flags(p: argparse.ArgumentParser) -> None:
    _add(p, "a-var", default="a")
    _add(p, "b-var", default="b")
    _add(p, "c-var", default="c")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfunc", description="Exact q-operator calculus on truncated power series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="apply a q-operator to a series")
    _add(p, "op", required=_env("op") is None, choices=[o.value for o in OperatorId])
    _add(p, "src", default="a", help="variable the operator acts on")
    _add(p, "new", default="b", help="new operator parameter variable")
    _add(p, "a-var", help="Cauchy operators: the a parameter variable")
    _add(p, "c-var", help="Cauchy operators: the variable acted on (defaults to --src)")
    _input_flags(p)
    _add(p, "out", metavar="FILE")

    p = sub.add_parser("residual", help="evaluate LHS - RHS of an equation")
    _add(p, "eq", required=_env("eq") is None, choices=[e.value for e in EquationId])
    _role_flags(p)
    _input_flags(p)
    _add(p, "out", metavar="FILE")

    p = sub.add_parser("solve", help="solve an equation from its boundary data")
    _add(p, "eq", required=_env("eq") is None, choices=[e.value for e in EquationId])
    _add(p, "method", default="operator", choices=["operator", "recurrence", "both"])
    _role_flags(p)
    _input_flags(p, "boundary")
    _add(p, "out", metavar="FILE")

    for name in ("verify", "selftest"):
        p = sub.add_parser(name, help="seeded verification matrix" + (" plus extra checks" if name == "selftest" else ""))
        _add(p, "eq", default="all", choices=["all"] + [e.value for e in EquationId])
        _add(p, "seeds", type=int, default=50)
        _add(p, "degree", type=int, default=6)
        _add(p, "q", default=",".join(format_rational(q) for q in DEFAULT_QS))
        _add(p, "max-order", type=int, default=DEFAULT_MAX_ORDER)
        _add(p, "coef-bound", type=int, default=9)
        _add(p, "jobs", type=int, default=1)
    return parser


def _int(value, flag: str) -> int | None:
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"--{flag}: expected an integer, got {value!r}") from None


def _load(args, source_flag: str) -> S.MultiSeries:
    path = getattr(args, source_flag.replace("-", "_"))
    if (path is None) == (args.expr is None):
        raise UsageError(f"give exactly one of --{source_flag} or --expr")
    max_order = _int(args.max_order, "max-order")
    text = args.expr if path is None else Path(path).read_text()
    if text.lstrip().startswith("{"):
        f = loads(text, max_order)
        if max_order < f.exact_to:
            raise UsageError(f"--max-order {max_order} is below the file's exact_to {f.exact_to}")
        return f
    if args.q is None:
        raise UsageError("inline input needs --q")
    ctx = make_context(parse_rational(args.q), max_order)
    vars = [v.strip() for v in args.vars.split(",")] if args.vars else None
    return parse_poly(text, ctx, vars, _int(args.exact_to, "exact-to"))


def _write(path: str | None, f: S.MultiSeries) -> None:
    if path:
        Path(path).write_text(dumps(f))


def _witness_text(f: S.MultiSeries) -> str:
    e, c = f.sorted_terms()[0]
    mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k) or "1"
    return f"witness: monomial {mono} exp={list(e)} coefficient {format_rational(c)}"


def _names(args) -> dict[str, str]:
    return {"a": args.a_var, "b": args.b_var, "c": args.c_var}


def cmd_expand(args) -> int:
    f = _load(args, "in")
    op = OperatorId(args.op)
    if op.is_cauchy:
        if args.a_var is None:
            raise UsageError(f"--a-var is required for {op.value}")
        out = apply_operator(op, f, args.c_var or args.src, args.new, a_var=args.a_var)
    else:
        out = apply_operator(op, f, args.src, args.new)
    _write(args.out, out)
    print(render(out))
    return EXIT_OK


def cmd_residual(args) -> int:
    f = _load(args, "in")
    r = residual(args.eq, f, _names(args))
    _write(args.out, r)
    if r.is_zero:
        print(f"{args.eq}: residual is zero up to degree {r.exact_to}")
        return EXIT_OK
    print(f"{args.eq}: residual is NONZERO (exact to degree {r.exact_to})")
    print(_witness_text(r))
    print("residual: " + render(r))
    return EXIT_FAIL


def cmd_solve(args) -> int:
    g = _load(args, "boundary")
    eq = EquationId(args.eq)
    names = _names(args)
    if args.method == "recurrence":
        sol = solve_recurrence(eq, g, names)
    else:
        op = None
        if eq is EquationId.THM_2_4 and args.method == "both":
            op = adjudicate_thm2_4(g.ctx)
            print(f"thm2_4: the recurrence selects {op.value}; "
                  f"{'T(+b*theta)' if op is OperatorId.T_btheta_plus else 'T(-b*theta)'} is used")
        sol = solve_operator(eq, g, names, op=op)
        if args.method == "both":
            rec = solve_recurrence(eq, g, names)
            if rec != sol:
                _write(args.out, sol)
                print(render(sol))
                print("solvers DISAGREE")
                print(_witness_text(S.add(sol, S.scale(rec, -1))))
                return EXIT_FAIL
    _write(args.out, sol)
    print(render(sol))
    if args.method == "both":
        print(f"operator and recurrence solutions agree up to degree {sol.exact_to}")
    return EXIT_OK


def cmd_verify(args, extra_checks: bool = False) -> int:
    try:
        qs = [parse_rational(s) for s in str(args.q).split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"--q: {exc}") from None
    seeds, degree = _int(args.seeds, "seeds"), _int(args.degree, "degree")
    max_order, coef_bound = _int(args.max_order, "max-order"), _int(args.coef_bound, "coef-bound")
    jobs = _int(args.jobs, "jobs")
    if not qs:
        raise UsageError("--q: empty list")
    if seeds < 0 or coef_bound < 0:
        raise UsageError("--seeds and --coef-bound must be nonnegative")
    if not 0 <= degree <= max_order:
        raise UsageError(f"--degree must lie in 0..{max_order}")
    for q in qs:
        make_context(q, max_order)
    eqs = list(EquationId) if args.eq == "all" else [EquationId(args.eq)]

    cells = run_matrix(eqs, qs, seeds, degree, max_order, coef_bound, jobs)
    header = ["eq"] + [format_rational(q) for q in qs]
    width = max(10, *(len(h) for h in header))
    print("  ".join(h.ljust(width) for h in header))
    ok = True
    for i, eq in enumerate(eqs):
        row = cells[i * len(qs) : (i + 1) * len(qs)]
        marks = [("PASS" if c.ok else "FAIL") + f" {c.passed}/{c.total}" for c in row]
        print("  ".join(s.ljust(width) for s in [eq.value] + marks))
        ok &= all(c.ok for c in row)
        for c in row:
            for seed, rep in c.failures[:3]:
                print(f"  {eq.value} q={format_rational(c.q)} seed={seed}: {rep}")
    for c in cells:
        if c.eq is EquationId.THM_2_4:
            sign = "+" if c.operator is OperatorId.T_btheta_plus else "-"
            print(f"note: thm2_4 at q={format_rational(c.q)} is solved by T({sign}b*theta) ({c.operator.value}); "
                  f"the T(-b*theta) form {'disagrees with' if sign == '+' else 'matches'} the recurrence")
            break

    if extra_checks:
        for q in qs:
            ctx = make_context(q, max_order)
            for kind in DegenerationKind:
                rep = degeneration_check(ctx, kind, max_order)
                ok &= rep.ok
                print(f"degeneration {kind.value} q={format_rational(q)} n<={max_order}: {'PASS' if rep.ok else 'FAIL'}")
            a_plus_b = parse_poly("a + b", ctx)
            a_minus_b = parse_poly("a - b", ctx)
            expected = S.make_series(ctx, ("a", "b"), ctx.max_order, [((1, 1), 2 * (1 - ctx.q))])
            sign_ok = residual("thm2_4", a_plus_b).is_zero and residual("thm2_4", a_minus_b) == expected
            ok &= sign_ok
            print(f"thm2_4 sign probe q={format_rational(q)}: {'PASS' if sign_ok else 'FAIL'}")

    print("ALL PASS" if ok else "FAILURES PRESENT")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "expand":
            return cmd_expand(args)
        if args.command == "residual":
            return cmd_residual(args)
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_verify(args, extra_checks=args.command == "selftest")
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
