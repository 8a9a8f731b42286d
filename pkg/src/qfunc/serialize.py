"""Canonical JSON series files, the inline polynomial syntax, and text rendering."""

from __future__ import annotations

import json
import re
from collections.abc import Sequence
from fractions import Fraction

from .qcore import QContext, format_rational, make_context, parse_rational
from .series import MultiSeries, SeriesError, make_series

_FIELDS = ("q", "vars", "exact_to", "terms")


def to_dict(f: MultiSeries) -> dict:
    return {
        "q": format_rational(f.ctx.q),
        "vars": list(f.vars),
        "exact_to": f.exact_to,
        "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in f.sorted_terms()],
    }


def dumps(f: MultiSeries) -> str:
    return json.dumps(to_dict(f), separators=(",", ":")) + "\n"


def from_dict(obj: dict, max_order: int | None = None) -> MultiSeries:
    """Build a series from its canonical JSON object.

    ``max_order`` defaults to the series' own ``exact_to``.
    """
    if not isinstance(obj, dict):
        raise SeriesError("series file must hold a JSON object")
    missing = [k for k in _FIELDS if k not in obj]
    if missing:
        raise SeriesError(f"missing field(s) {missing}")
    extra = sorted(set(obj) - set(_FIELDS))
    if extra:
        raise SeriesError(f"unknown field(s) {extra}")
    if not isinstance(obj["q"], str):
        raise SeriesError("field 'q' must be a rational string")
    vars = obj["vars"]
    if not isinstance(vars, list) or not all(isinstance(v, str) and v for v in vars):
        raise SeriesError("field 'vars' must be a list of names")
    exact_to = obj["exact_to"]
    if not isinstance(exact_to, int) or isinstance(exact_to, bool) or exact_to < 0:
        raise SeriesError("field 'exact_to' must be a nonnegative integer")
    if not isinstance(obj["terms"], list):
        raise SeriesError("field 'terms' must be a list")
    terms = []
    for t in obj["terms"]:
        if not isinstance(t, dict) or set(t) != {"exp", "coef"}:
            raise SeriesError("each term must be an object with 'exp' and 'coef'")
        exp = t["exp"]
        if not isinstance(exp, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in exp):
            raise SeriesError("field 'exp' must be a list of integers")
        if not isinstance(t["coef"], str):
            raise SeriesError("field 'coef' must be a rational string")
        terms.append((exp, parse_rational(t["coef"])))
    ctx = make_context(parse_rational(obj["q"]), exact_to if max_order is None else max_order)
    return make_series(ctx, vars, exact_to, terms)


def loads(text: str, max_order: int | None = None) -> MultiSeries:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesError(f"invalid JSON: {exc}") from None
    return from_dict(obj, max_order)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SeriesError(f"cannot parse {text[pos:]!r}")
        kind = ("num", "name", "pow", "mul", "sign")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex)))
        pos = m.end()
    return out


def parse_poly(
    text: str,
    ctx: QContext,
    vars: Sequence[str] | None = None,
    exact_to: int | None = None,
) -> MultiSeries:
    """Parse ``"a^2 - 3/2*a*b + 1"``: signed terms of ``coef*var^k*...`` factors.

    Variables default to order of first appearance; ``exact_to`` defaults to
    ``ctx.max_order`` (a polynomial is exact in every degree).
    """
    toks = _tokens(text)
    if not toks:
        raise SeriesError("empty polynomial")
    monos: list[tuple[Fraction, dict[str, int]]] = []
    seen: list[str] = []
    i = 0
    while i < len(toks):
        sign = 1
        if toks[i][0] == "sign":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif monos:
            raise SeriesError(f"expected '+' or '-' before {toks[i][1]!r}")
        coef = Fraction(sign)
        powers: dict[str, int] = {}
        expect_factor = True
        while i < len(toks) and toks[i][0] != "sign":
            kind, val = toks[i]
            if not expect_factor:
                if kind != "mul":
                    raise SeriesError(f"expected '*' before {val!r}")
                expect_factor = True
                i += 1
                continue
            if kind == "num":
                coef *= parse_rational(val)
                i += 1
            elif kind == "name":
                k = 1
                i += 1
                if i < len(toks) and toks[i][0] == "pow":
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise SeriesError(f"exponent of {val!r} must be a nonnegative integer")
                    k = int(toks[i + 1][1])
                    i += 2
                powers[val] = powers.get(val, 0) + k
                if val not in seen:
                    seen.append(val)
            else:
                raise SeriesError(f"unexpected {val!r}")
            expect_factor = False
        if expect_factor:
            raise SeriesError("dangling operator")
        monos.append((coef, powers))
    if vars is None:
        vars = seen
    unknown = [v for v in seen if v not in vars]
    if unknown:
        raise SeriesError(f"undeclared variable(s) {unknown}")
    vars = tuple(vars)
    if exact_to is None:
        exact_to = ctx.max_order
    return make_series(ctx, vars, exact_to, [(tuple(p.get(v, 0) for v in vars), c) for c, p in monos])


def _render_order(f: MultiSeries) -> list[tuple[tuple[int, ...], Fraction]]:
    # graded: total degree ascending, then lexicographically descending
    return sorted(f.terms.items(), key=lambda t: (sum(t[0]), tuple(-k for k in t[0])))


def render(f: MultiSeries) -> str:
    """Human-readable expansion, e.g. ``a^2 + 3/2*a*b + b^2``."""
    parts = []
    for e, c in _render_order(f):
        factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k]
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"
