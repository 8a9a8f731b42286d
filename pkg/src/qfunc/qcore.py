"""Exact rationals, the q-context and scalar q-combinatorics.

Coefficients are :class:`fractions.Fraction` throughout; nothing is ever
rounded.  A :class:`QContext` pins one rational ``q`` together with the global
truncation order and a table of ``(q;q)_n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class DegenerateQError(ValueError):
    """q is 0, 1 or -1, so some 1 - q^n vanishes or q has no inverse."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optional sign, decimal digits only)."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def as_rational(x: Fraction | int | str) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class QContext:
    """A fixed rational q, the truncation order N, and cached (q;q)_n, n <= N.

    ``wide_q`` is set when |q| >= 1.  All identities handled here are formal and
    finite, so this is only informative.
    """

    q: Fraction
    max_order: int
    q_factorials: tuple[Fraction, ...] = field(repr=False, compare=False)
    wide_q: bool = field(default=False, compare=False)

    def qpow(self, k: int) -> Fraction:
        return self.q**k


def make_context(q: Fraction | int | str, max_order: int) -> QContext:
    q = as_rational(q)
    if q in (0, 1, -1):
        raise DegenerateQError(f"degenerate q: {format_rational(q)}")
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    table = [Fraction(1)]
    for n in range(1, max_order + 1):
        table.append(table[-1] * (1 - q**n))
    return QContext(q, max_order, tuple(table), abs(q) >= 1)


def q_factorial(ctx: QContext, n: int) -> Fraction:
    """(q;q)_n from the context cache."""
    if not 0 <= n <= ctx.max_order:
        raise ValueError(f"n={n} outside 0..{ctx.max_order}")
    return ctx.q_factorials[n]


def q_pochhammer_scalar(ctx: QContext, x: Fraction | int, n: int) -> Fraction:
    """(x;q)_n = (1 - x)(1 - xq)...(1 - xq^(n-1)); the empty product is 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Fraction(x)
    return reduce(lambda acc, k: acc * (1 - x * ctx.q**k), range(n), Fraction(1))


def gauss_binomial(ctx: QContext, n: int, k: int) -> Fraction:
    if not 0 <= k <= n <= ctx.max_order:
        raise ValueError(f"need 0 <= k <= n <= {ctx.max_order}, got n={n}, k={k}")
    f = ctx.q_factorials
    return f[n] / (f[k] * f[n - k])
