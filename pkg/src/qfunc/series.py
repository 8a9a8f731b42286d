"""Sparse truncated multivariate power series over exact rationals.

A :class:`MultiSeries` carries an ``exact_to`` bound: every coefficient of total
degree <= ``exact_to`` is known exactly, and nothing above it is stored.  All
operations propagate that bound conservatively.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .qcore import QContext

Exponent = tuple[int, ...]


class SeriesError(ValueError):
    pass


class NotDivisibleError(SeriesError):
    pass


class OutsideExactRegion(SeriesError):
    pass


def _clean(terms: Mapping[Exponent, Fraction], exact_to: int) -> dict[Exponent, Fraction]:
    return {e: c for e, c in terms.items() if c and sum(e) <= exact_to}


@dataclass(frozen=True, eq=False)
class MultiSeries:
    ctx: QContext
    vars: tuple[str, ...]
    exact_to: int
    terms: Mapping[Exponent, Fraction]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.exact_to == other.exact_to
            and self.ctx.q == other.ctx.q
            and dict(self.terms) == dict(other.terms)
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: MultiSeries) -> MultiSeries:
        return add(self, other)

    def __sub__(self, other: MultiSeries) -> MultiSeries:
        return add(self, scale(other, -1))

    def __neg__(self) -> MultiSeries:
        return scale(self, -1)

    def __mul__(self, other: MultiSeries | Fraction | int) -> MultiSeries:
        if isinstance(other, MultiSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"MultiSeries(vars={list(self.vars)}, exact_to={self.exact_to}, terms={len(self.terms)})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise SeriesError(f"unknown variable {var!r}") from None

    def max_degree(self) -> int:
        """Largest total degree actually stored (-1 for the zero series)."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items())

    def unit(self, var: str, k: int = 1) -> Exponent:
        """Exponent vector of ``var**k`` in this series' variable order."""
        i = self.index(var)
        return tuple(k if j == i else 0 for j in range(len(self.vars)))


def _new(ctx: QContext, vars: Sequence[str], exact_to: int, terms: Mapping[Exponent, Fraction]) -> MultiSeries:
    return MultiSeries(ctx, tuple(vars), exact_to, _clean(terms, exact_to))


def make_series(
    ctx: QContext,
    vars: Sequence[str],
    exact_to: int,
    terms: Iterable[tuple[Sequence[int], Fraction | int]] = (),
) -> MultiSeries:
    vars = tuple(vars)
    if len(set(vars)) != len(vars):
        raise SeriesError(f"duplicate variable names in {list(vars)}")
    if not 0 <= exact_to <= ctx.max_order:
        raise SeriesError(f"exact_to={exact_to} outside 0..{ctx.max_order}")
    acc: dict[Exponent, Fraction] = {}
    for exp, coef in terms:
        exp = tuple(int(k) for k in exp)
        if len(exp) != len(vars):
            raise SeriesError(f"dimension mismatch: exponent {list(exp)} for vars {list(vars)}")
        if any(k < 0 for k in exp):
            raise SeriesError(f"negative exponent in {list(exp)}")
        if sum(exp) > exact_to:
            raise SeriesError(f"degree overflow: {list(exp)} has degree > {exact_to}")
        acc[exp] = acc.get(exp, Fraction(0)) + Fraction(coef)
    return _new(ctx, vars, exact_to, acc)


def zero(ctx: QContext, vars: Sequence[str], exact_to: int) -> MultiSeries:
    return make_series(ctx, vars, exact_to)


def constant(ctx: QContext, vars: Sequence[str], exact_to: int, value: Fraction | int = 1) -> MultiSeries:
    return make_series(ctx, vars, exact_to, [((0,) * len(vars), value)])


def _check_compatible(f: MultiSeries, g: MultiSeries) -> None:
    if f.ctx is not g.ctx and f.ctx != g.ctx:
        raise SeriesError("context mismatch")
    if f.vars != g.vars:
        raise SeriesError(f"variable mismatch: {list(f.vars)} vs {list(g.vars)}")


def add(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    _check_compatible(f, g)
    acc = dict(f.terms)
    for e, c in g.terms.items():
        acc[e] = acc.get(e, 0) + c
    return _new(f.ctx, f.vars, min(f.exact_to, g.exact_to), acc)


def mul(f: MultiSeries, g: MultiSeries) -> MultiSeries:
    _check_compatible(f, g)
    bound = min(f.exact_to, g.exact_to)
    acc: dict[Exponent, Fraction] = {}
    gitems = [(e, sum(e), c) for e, c in g.terms.items()]
    for e1, c1 in f.terms.items():
        d1 = sum(e1)
        if d1 > bound:
            continue
        for e2, d2, c2 in gitems:
            if d1 + d2 > bound:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            acc[e] = acc.get(e, 0) + c1 * c2
    return _new(f.ctx, f.vars, bound, acc)


def scale(f: MultiSeries, r: Fraction | int) -> MultiSeries:
    r = Fraction(r)
    if not r:
        return _new(f.ctx, f.vars, f.exact_to, {})
    return MultiSeries(f.ctx, f.vars, f.exact_to, {e: c * r for e, c in f.terms.items()})


def extend_vars(f: MultiSeries, new_vars: Sequence[str]) -> MultiSeries:
    new_vars = tuple(new_vars)
    if len(set(new_vars)) != len(new_vars):
        raise SeriesError(f"duplicate variable names in {list(new_vars)}")
    missing = [v for v in f.vars if v not in new_vars]
    if missing:
        raise SeriesError(f"new variable list drops {missing}")
    pos = [f.vars.index(v) if v in f.vars else None for v in new_vars]
    terms = {tuple(0 if p is None else e[p] for p in pos): c for e, c in f.terms.items()}
    return MultiSeries(f.ctx, new_vars, f.exact_to, terms)


def drop_var(f: MultiSeries, var: str) -> MultiSeries:
    """Remove a variable that no stored term depends on."""
    i = f.index(var)
    if any(e[i] for e in f.terms):
        raise SeriesError(f"series depends on {var!r}")
    terms = {e[:i] + e[i + 1 :]: c for e, c in f.terms.items()}
    return MultiSeries(f.ctx, f.vars[:i] + f.vars[i + 1 :], f.exact_to, terms)


def dilate(f: MultiSeries, var: str, m: int = 1) -> MultiSeries:
    """Substitute var -> q**m * var."""
    i = f.index(var)
    if m == 0:
        return f
    qm = f.ctx.q**m
    return MultiSeries(f.ctx, f.vars, f.exact_to, {e: c * qm ** e[i] for e, c in f.terms.items()})


def mul_by_monomial(f: MultiSeries, e: Sequence[int], *, truncate: bool = False) -> MultiSeries:
    """Shift every exponent by ``e``.

    The bound becomes ``min(exact_to + deg e, max_order)``.  A stored term pushed
    past ``max_order`` is an error unless ``truncate`` is set, in which case it
    is dropped (it lies above the new bound anyway).
    """
    e = tuple(e)
    if len(e) != len(f.vars):
        raise SeriesError(f"dimension mismatch: exponent {list(e)} for vars {list(f.vars)}")
    d = sum(e)
    n = f.ctx.max_order
    if not truncate and f.max_degree() + d > n:
        raise SeriesError(f"degree overflow: shifting by degree {d} passes max_order {n}")
    bound = min(f.exact_to + d, n)
    terms = {tuple(x + y for x, y in zip(k, e)): c for k, c in f.terms.items()}
    return _new(f.ctx, f.vars, bound, terms)


def mul_by_var(f: MultiSeries, var: str, k: int = 1, *, truncate: bool = False) -> MultiSeries:
    return mul_by_monomial(f, f.unit(var, k), truncate=truncate)


def divide_by_var(f: MultiSeries, var: str) -> MultiSeries:
    i = f.index(var)
    if f.exact_to < 1:
        raise SeriesError("cannot divide a series exact only to degree 0")
    terms = {}
    for e, c in f.terms.items():
        if e[i] == 0:
            raise NotDivisibleError(f"not divisible by {var}: term {list(e)} has no {var}")
        terms[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c
    return MultiSeries(f.ctx, f.vars, f.exact_to - 1, terms)


def set_var_zero(f: MultiSeries, var: str) -> MultiSeries:
    i = f.index(var)
    return MultiSeries(f.ctx, f.vars, f.exact_to, {e: c for e, c in f.terms.items() if e[i] == 0})


def coefficient(f: MultiSeries, e: Sequence[int]) -> Fraction:
    e = tuple(e)
    if len(e) != len(f.vars):
        raise SeriesError(f"dimension mismatch: exponent {list(e)} for vars {list(f.vars)}")
    if sum(e) > f.exact_to:
        raise OutsideExactRegion(f"monomial {list(e)} lies outside the exact region (exact_to={f.exact_to})")
    return f.terms.get(e, Fraction(0))


def truncate(f: MultiSeries, exact_to: int) -> MultiSeries:
    """Lower the exactness bound (never raises it)."""
    return _new(f.ctx, f.vars, min(exact_to, f.exact_to), f.terms)


def monomials(nvars: int, max_degree: int) -> Iterator[Exponent]:
    """All exponent vectors of total degree <= max_degree, in lexicographic order."""
    for e in product(range(max_degree + 1), repeat=nvars):
        if sum(e) <= max_degree:
            yield e


def random_series(
    ctx: QContext, seed: int, vars: Sequence[str], exact_to: int, coef_bound: int
) -> MultiSeries:
    """Integer coefficients in [-coef_bound, coef_bound] on every monomial up to exact_to.

    Deterministic in ``(seed, vars, exact_to, coef_bound)``.
    """
    rng = random.Random(f"{seed}|{','.join(vars)}|{exact_to}|{coef_bound}")
    terms = [(e, rng.randint(-coef_bound, coef_bound)) for e in monomials(len(vars), exact_to)]
    return make_series(ctx, vars, exact_to, terms)


def is_canonical(f: MultiSeries) -> bool:
    return (
        f.exact_to <= f.ctx.max_order
        and all(c != 0 and sum(e) <= f.exact_to and len(e) == len(f.vars) for e, c in f.terms.items())
        and all(isinstance(c, Fraction) for c in f.terms.values())
    )
