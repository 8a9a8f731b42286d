"""The six q-functional equations, their residuals, and two independent solvers.

``solve_operator`` evaluates the closed operator formula for each equation.
``solve_recurrence`` never touches :mod:`qops`: it expands f = sum_n A_n b**n,
and builds each slice A_n from A_{n-1} with the divided differences written out
via dilation, subtraction and exact division by a variable.  Agreement of the
two plus a vanishing residual is what :func:`verify` reports.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from . import series as S
from .qcore import QContext, q_pochhammer_scalar
from .qops import OperatorId, apply_operator, cauchy_dq_factor, cauchy_theta_factor, exp_weight
from .series import MultiSeries, SeriesError


class EquationError(SeriesError):
    pass


class EquationId(str, enum.Enum):
    THM_1_1 = "thm1_1"
    THM_1_2 = "thm1_2"
    EQ_1 = "eq1"
    EQ_2 = "eq2"
    THM_2_3 = "thm2_3"
    THM_2_4 = "thm2_4"

    @property
    def roles(self) -> tuple[str, ...]:
        if self in (EquationId.EQ_1, EquationId.EQ_2):
            return ("a", "b", "c")
        return ("a", "b")

    @property
    def boundary_role(self) -> str:
        return "b"

    @property
    def boundary_roles(self) -> tuple[str, ...]:
        return tuple(r for r in self.roles if r != "b")

    @property
    def operator(self) -> OperatorId:
        return _DEFAULT_OPERATOR[self]


_DEFAULT_OPERATOR = {
    EquationId.THM_1_1: OperatorId.T_bDq,
    EquationId.THM_1_2: OperatorId.E_btheta,
    EquationId.EQ_1: OperatorId.Cauchy_Dq,
    EquationId.EQ_2: OperatorId.Cauchy_theta,
    EquationId.THM_2_3: OperatorId.E_bDq,
    EquationId.THM_2_4: OperatorId.T_btheta_plus,
}

# Each side is a list of (sign, multiplier roles, dilated roles): the term
# sign * prod(multiplier) * f(with each dilated role r -> q r).
_Term = tuple[int, tuple[str, ...], tuple[str, ...]]

_SIDES: dict[EquationId, tuple[list[_Term], list[_Term]]] = {
    # b f(aq,b) - a f(a,bq) = (b - a) f(a,b)
    EquationId.THM_1_1: (
        [(1, ("b",), ("a",)), (-1, ("a",), ("b",))],
        [(1, ("b",), ()), (-1, ("a",), ())],
    ),
    # a f(aq,b) - b f(a,bq) = (a - b) f(aq,bq)
    EquationId.THM_1_2: (
        [(1, ("a",), ("a",)), (-1, ("b",), ("b",))],
        [(1, ("a",), ("a", "b")), (-1, ("b",), ("a", "b"))],
    ),
    # c (f - f(a,bq,c)) = b (f - f(a,b,cq) - a f(a,bq,c) + a f(a,bq,cq))
    EquationId.EQ_1: (
        [(1, ("c",), ()), (-1, ("c",), ("b",))],
        [(1, ("b",), ()), (-1, ("b",), ("c",)), (-1, ("a", "b"), ("b",)), (1, ("a", "b"), ("b", "c"))],
    ),
    # c (f(a,bq,cq) - f(a,b,cq)) = b (f(a,bq,cq) - f(a,bq,c) - a f + a f(a,b,cq))
    EquationId.EQ_2: (
        [(1, ("c",), ("b", "c")), (-1, ("c",), ("c",))],
        [(1, ("b",), ("b", "c")), (-1, ("b",), ("b",)), (-1, ("a", "b"), ()), (1, ("a", "b"), ("c",))],
    ),
    # a f(a,b) + b f(aq,bq) = (a + b) f(a,bq)
    EquationId.THM_2_3: (
        [(1, ("a",), ()), (1, ("b",), ("a", "b"))],
        [(1, ("a",), ("b",)), (1, ("b",), ("b",))],
    ),
    # a f(aq,bq) + b f(a,b) = (a + b) f(aq,b)
    EquationId.THM_2_4: (
        [(1, ("a",), ("a", "b")), (1, ("b",), ())],
        [(1, ("a",), ("a",)), (1, ("b",), ("a",))],
    ),
}


def role_names(eq: EquationId, names: Mapping[str, str] | None = None) -> dict[str, str]:
    names = dict(names or {})
    bound = {r: names.get(r, r) for r in eq.roles}
    if len(set(bound.values())) != len(bound):
        raise EquationError(f"role variables must be distinct, got {bound}")
    return bound


def _side(f: MultiSeries, terms: list[_Term], v: dict[str, str]) -> MultiSeries:
    total = None
    for sign, mult, dil in terms:
        g = f
        for r in dil:
            g = S.dilate(g, v[r], 1)
        e = [0] * len(f.vars)
        for r in mult:
            e[f.vars.index(v[r])] += 1
        g = S.mul_by_monomial(g, e, truncate=True)
        if sign < 0:
            g = S.scale(g, -1)
        total = g if total is None else S.add(total, g)
    return total


def residual(eq: EquationId | str, f: MultiSeries, names: Mapping[str, str] | None = None) -> MultiSeries:
    """LHS - RHS of the equation with f substituted.

    Every term carries at least one variable factor, so the result is exact to
    ``f.exact_to + 1`` (clamped at max_order).
    """
    eq = EquationId(eq)
    v = role_names(eq, names)
    missing = [name for name in v.values() if name not in f.vars]
    if missing:
        raise EquationError(f"missing role variables {missing} for {eq.value}")
    lhs, rhs = _SIDES[eq]
    return S.add(_side(f, lhs, v), S.scale(_side(f, rhs, v), -1))


def _prepare_boundary(eq: EquationId, g: MultiSeries, v: dict[str, str]) -> MultiSeries:
    b = v["b"]
    if b in g.vars:
        if any(e[g.vars.index(b)] for e in g.terms):
            raise EquationError(f"boundary data depends on the boundary variable {b!r}")
        g = S.drop_var(g, b)
    missing = [v[r] for r in eq.boundary_roles if v[r] not in g.vars]
    if missing:
        raise EquationError(f"boundary is missing role variables {missing} for {eq.value}")
    return g


def solve_operator(
    eq: EquationId | str,
    boundary: MultiSeries,
    names: Mapping[str, str] | None = None,
    op: OperatorId | str | None = None,
) -> MultiSeries:
    """Apply the equation's operator to the boundary data f(..., b=0, ...).

    ``op`` overrides the dispatch (used to probe the two T(+-b theta) variants).
    """
    eq = EquationId(eq)
    v = role_names(eq, names)
    g = _prepare_boundary(eq, boundary, v)
    op = eq.operator if op is None else OperatorId(op)
    if op.is_cauchy:
        return apply_operator(op, g, v["c"], v["b"], a_var=v["a"])
    return apply_operator(op, g, v["a"], v["b"])


# --- recurrence solver -------------------------------------------------------


def _dq_def(g: MultiSeries, x: str) -> MultiSeries:
    """(g(x) - g(qx)) / x."""
    return S.divide_by_var(S.add(g, S.scale(S.dilate(g, x, 1), -1)), x)


def _theta_def(g: MultiSeries, x: str) -> MultiSeries:
    """(g(x/q) - g(x)) / (x/q)."""
    diff = S.add(S.dilate(g, x, -1), S.scale(g, -1))
    return S.scale(S.divide_by_var(diff, x), g.ctx.q)


def _step(eq: EquationId, prev: MultiSeries, n: int, v: dict[str, str]) -> MultiSeries:
    """A_n from A_{n-1} by comparing b**n coefficients in the equation."""
    ctx = prev.ctx
    q = ctx.q
    inv = 1 / (1 - q**n)
    if eq is EquationId.THM_1_1:
        # a(1-q^n) A_n(a) = A_{n-1}(a) - A_{n-1}(aq)
        return S.scale(_dq_def(prev, v["a"]), inv)
    if eq is EquationId.THM_2_3:
        # a(1-q^n) A_n(a) = q^{n-1} (A_{n-1}(a) - A_{n-1}(aq))
        return S.scale(_dq_def(prev, v["a"]), q ** (n - 1) * inv)
    if eq is EquationId.THM_1_2:
        # a(1-q^n) A_n(aq) = q^{n-1} (A_{n-1}(a) - A_{n-1}(aq))
        return S.scale(_theta_def(prev, v["a"]), q ** (n - 1) * inv)
    if eq is EquationId.THM_2_4:
        # a(1-q^n) A_n(aq) = A_{n-1}(a) - A_{n-1}(aq)
        return S.scale(_theta_def(prev, v["a"]), inv)
    if eq is EquationId.EQ_1:
        # c(1-q^n) A_n(c) = (1 - a q^{n-1}) (A_{n-1}(c) - A_{n-1}(cq))
        d = _dq_def(prev, v["c"])
        d = S.add(d, S.scale(S.mul_by_var(d, v["a"], truncate=True), -(q ** (n - 1))))
        return S.scale(d, inv)
    if eq is EquationId.EQ_2:
        # c(1-q^n) A_n(cq) = (q^{n-1} + a) (A_{n-1}(c) - A_{n-1}(cq))
        d = _theta_def(prev, v["c"])
        d = S.add(S.scale(d, q ** (n - 1)), S.mul_by_var(d, v["a"], truncate=True))
        return S.scale(d, inv)
    raise AssertionError(eq)


def recurrence_slices(
    eq: EquationId | str, boundary: MultiSeries, names: Mapping[str, str] | None = None
) -> list[MultiSeries]:
    """[A_0, A_1, ..., A_d] with A_0 the boundary data; A_n is exact to d - n."""
    eq = EquationId(eq)
    v = role_names(eq, names)
    a0 = _prepare_boundary(eq, boundary, v)
    slices = [a0]
    for n in range(1, a0.exact_to + 1):
        nxt = _step(eq, slices[-1], n, v)
        slices.append(S.truncate(nxt, a0.exact_to - n))
    return slices


def solve_recurrence(
    eq: EquationId | str, boundary: MultiSeries, names: Mapping[str, str] | None = None
) -> MultiSeries:
    eq = EquationId(eq)
    v = role_names(eq, names)
    slices = recurrence_slices(eq, boundary, names)
    out_vars = slices[0].vars + (v["b"],)
    total = S.extend_vars(slices[0], out_vars)
    for n, a_n in enumerate(slices[1:], start=1):
        total = S.add(total, S.mul_by_var(S.extend_vars(a_n, out_vars), v["b"], n))
    return total


# --- verification ------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    residual_is_zero: bool
    solvers_agree: bool
    checked_degree: int
    failure_witness: tuple[tuple[int, ...], Fraction] | None = None
    operator: str | None = None

    @property
    def ok(self) -> bool:
        return self.residual_is_zero and self.solvers_agree


def _first_term(f: MultiSeries) -> tuple[tuple[int, ...], Fraction] | None:
    items = f.sorted_terms()
    return items[0] if items else None


def verify(
    eq: EquationId | str,
    boundary: MultiSeries,
    names: Mapping[str, str] | None = None,
    op: OperatorId | str | None = None,
) -> VerificationReport:
    """Run both solvers, compare them, and check both residuals vanish.

    The witness is the lexicographically smallest offending monomial, taken
    first from the operator solution's residual, then the recurrence
    solution's residual, then the difference of the two solutions.
    """
    eq = EquationId(eq)
    op = eq.operator if op is None else OperatorId(op)
    by_op = solve_operator(eq, boundary, names, op=op)
    by_rec = solve_recurrence(eq, boundary, names)
    shared = min(by_op.exact_to, by_rec.exact_to)
    diff = S.truncate(S.add(by_op, S.scale(by_rec, -1)), shared)
    res_op = residual(eq, by_op, names)
    res_rec = residual(eq, by_rec, names)
    witness = _first_term(res_op) or _first_term(res_rec) or _first_term(diff)
    return VerificationReport(
        subject=eq.value,
        residual_is_zero=res_op.is_zero and res_rec.is_zero,
        solvers_agree=diff.is_zero,
        checked_degree=shared,
        failure_witness=witness,
        operator=op.value,
    )


def adjudicate_thm2_4(ctx: QContext, probe: MultiSeries | None = None) -> OperatorId:
    """Return the T(+-b theta) variant that reproduces the recurrence solution.

    The default probe is the boundary ``a``, which already separates the two.
    """
    if probe is None:
        probe = S.make_series(ctx, ("a",), min(ctx.max_order, 2), [((1,), 1)])
    matches = [
        op
        for op in (OperatorId.T_btheta_plus, OperatorId.T_btheta_minus)
        if verify(EquationId.THM_2_4, probe, op=op).ok
    ]
    if len(matches) != 1:
        raise EquationError(f"probe does not single out a variant: {[m.value for m in matches]}")
    return matches[0]


class DegenerationKind(str, enum.Enum):
    cauchy_dq_to_T = "cauchy_dq_to_T"
    cauchy_theta_to_E = "cauchy_theta_to_E"


def degeneration_check(ctx: QContext, kind: DegenerationKind | str, max_n: int) -> VerificationReport:
    """Compare the a = 0 value of each Cauchy weight with the matching exponential weight.

    Both sides include the 1/(q;q)_n.  The Cauchy side is read off the actual
    coefficient polynomial used by :mod:`qops` and cross-checked against the
    scalar product ((0;q)_n, resp. prod_{k<n} q**k).
    """
    kind = DegenerationKind(kind)
    if not 0 <= max_n <= ctx.max_order:
        raise ValueError(f"max_n must lie in 0..{ctx.max_order}")
    vars = ("a",)
    for n in range(max_n + 1):
        if kind is DegenerationKind.cauchy_dq_to_T:
            poly = cauchy_dq_factor(ctx, vars, ctx.max_order, "a", n)
            scalar = q_pochhammer_scalar(ctx, 0, n) / ctx.q_factorials[n]
            target = exp_weight(ctx, OperatorId.T_bDq, n)
        else:
            poly = cauchy_theta_factor(ctx, vars, ctx.max_order, "a", n)
            prod_qk = Fraction(1)
            for k in range(n):
                prod_qk *= 0 + ctx.q**k
            scalar = prod_qk / ctx.q_factorials[n]
            target = exp_weight(ctx, OperatorId.E_btheta, n)
        at_zero = S.coefficient(poly, (0,))
        if not (at_zero == scalar == target):
            return VerificationReport(kind.value, True, False, n, ((n,), at_zero - target))
    return VerificationReport(kind.value, True, True, max_n)
