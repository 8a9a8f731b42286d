"""q-difference operators and the q-exponential / Cauchy operator applications.

Every operator acts on one designated variable of a :class:`MultiSeries`.  The
operator sums are applied term by term,

    Op{f} = sum_n  w_n * b**n * L**n {f},     L = D_q or theta,

and are exactly finite here: the n-th term carries ``b**n`` so it lies above
the truncation bound once n > exact_to.
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from fractions import Fraction

from .qcore import QContext
from .series import (
    MultiSeries,
    SeriesError,
    add,
    constant,
    dilate,
    extend_vars,
    mul,
    mul_by_var,
    scale,
)


class OperatorId(str, enum.Enum):
    T_bDq = "T_bDq"
    E_btheta = "E_btheta"
    E_bDq = "E_bDq"
    T_btheta_plus = "T_btheta_plus"
    T_btheta_minus = "T_btheta_minus"
    Cauchy_Dq = "Cauchy_Dq"
    Cauchy_theta = "Cauchy_theta"

    @property
    def is_cauchy(self) -> bool:
        return self in (OperatorId.Cauchy_Dq, OperatorId.Cauchy_theta)

    @property
    def uses_theta(self) -> bool:
        return self in (
            OperatorId.E_btheta,
            OperatorId.T_btheta_plus,
            OperatorId.T_btheta_minus,
            OperatorId.Cauchy_theta,
        )


EXP_OPERATORS = (
    OperatorId.T_bDq,
    OperatorId.E_btheta,
    OperatorId.E_bDq,
    OperatorId.T_btheta_plus,
    OperatorId.T_btheta_minus,
)


def _lower(f: MultiSeries, var: str, multiplier: Callable[[int], Fraction]) -> MultiSeries:
    """Map var**k -> multiplier(k) * var**(k-1); the k = 0 part is annihilated."""
    i = f.index(var)
    if f.exact_to < 1:
        raise SeriesError("operator needs exact_to >= 1")
    terms = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            terms[e[:i] + (k - 1,) + e[i + 1 :]] = c * multiplier(k)
    return MultiSeries(f.ctx, f.vars, f.exact_to - 1, terms)


def dq(f: MultiSeries, var: str) -> MultiSeries:
    """Jackson q-derivative (f(x) - f(qx)) / x, via x**k -> (1 - q**k) x**(k-1)."""
    q = f.ctx.q
    return _lower(f, var, lambda k: 1 - q**k)


def eta_inv(f: MultiSeries, var: str) -> MultiSeries:
    return dilate(f, var, -1)


def theta(f: MultiSeries, var: str) -> MultiSeries:
    """D_q followed by x -> x/q: x**k -> (q**(1-k) - q) x**(k-1)."""
    q = f.ctx.q
    return _lower(f, var, lambda k: q ** (1 - k) - q)


def pochhammer_series(ctx: QContext, g: MultiSeries, n: int) -> MultiSeries:
    """(g;q)_n = prod_{k<n} (1 - g q**k) as a series, truncated at g.exact_to."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ctx.max_order:
        raise SeriesError(f"degree overflow: n={n} exceeds max_order {ctx.max_order}")
    one = constant(ctx, g.vars, g.exact_to)
    acc = one
    for k in range(n):
        acc = mul(acc, add(one, scale(g, -(ctx.q**k))))
    return acc


def exp_weight(ctx: QContext, op: OperatorId, n: int) -> Fraction:
    """n-th scalar weight of a q-exponential operator, including the 1/(q;q)_n."""
    qf = ctx.q_factorials[n]
    if op in (OperatorId.T_bDq, OperatorId.T_btheta_plus):
        return 1 / qf
    if op is OperatorId.T_btheta_minus:
        return (-1) ** n / qf
    if op in (OperatorId.E_btheta, OperatorId.E_bDq):
        return ctx.q ** (n * (n - 1) // 2) / qf
    raise ValueError(f"{op.value} is not a q-exponential operator")


def _check_roles(f: MultiSeries, present: tuple[str, ...], new: str) -> None:
    for v in present:
        if v not in f.vars:
            raise SeriesError(f"unknown variable {v!r}")
    if new in f.vars:
        raise SeriesError(f"variable collision: {new!r} already declared")
    if len(set(present)) != len(present):
        raise SeriesError(f"variable collision among {list(present)}")


def _operator_sum(
    f: MultiSeries,
    src_var: str,
    b_var: str,
    lower: Callable[[MultiSeries, str], MultiSeries],
    weight: Callable[[int], MultiSeries | Fraction],
) -> MultiSeries:
    out_vars = f.vars + (b_var,)
    g = extend_vars(f, out_vars)
    total = g
    for n in range(1, f.exact_to + 1):
        g = lower(g, src_var)
        if g.is_zero:
            break
        term = mul_by_var(g, b_var, n)
        w = weight(n)
        total = add(total, mul(w, term) if isinstance(w, MultiSeries) else scale(term, w))
    return total


def apply_exp_operator(op: OperatorId, f: MultiSeries, src_var: str, b_var: str) -> MultiSeries:
    op = OperatorId(op)
    if op not in EXP_OPERATORS:
        raise ValueError(f"{op.value} is not a q-exponential operator")
    _check_roles(f, (src_var,), b_var)
    lower = theta if op.uses_theta else dq
    return _operator_sum(f, src_var, b_var, lower, lambda n: exp_weight(f.ctx, op, n))


def cauchy_dq_factor(ctx: QContext, vars: tuple[str, ...], exact_to: int, a_var: str, n: int) -> MultiSeries:
    """(a;q)_n / (q;q)_n as a polynomial series in ``a_var``."""
    a = mul_by_var(constant(ctx, vars, exact_to), a_var, truncate=True)
    return scale(pochhammer_series(ctx, a, n), 1 / ctx.q_factorials[n])


def cauchy_theta_factor(ctx: QContext, vars: tuple[str, ...], exact_to: int, a_var: str, n: int) -> MultiSeries:
    """prod_{k<n} (a + q**k) / (q;q)_n, the cleared form of (-1/a;q)_n a**n / (q;q)_n."""
    one = constant(ctx, vars, exact_to)
    a = mul_by_var(one, a_var, truncate=True)
    acc = one
    for k in range(n):
        acc = mul(acc, add(a, scale(one, ctx.q**k)))
    return scale(acc, 1 / ctx.q_factorials[n])


def apply_cauchy_dq(f: MultiSeries, a_var: str, b_var: str, c_var: str) -> MultiSeries:
    """T(a, b; D_q) acting on ``c_var``."""
    _check_roles(f, (a_var, c_var), b_var)
    out_vars = f.vars + (b_var,)
    return _operator_sum(
        f, c_var, b_var, dq, lambda n: cauchy_dq_factor(f.ctx, out_vars, f.exact_to, a_var, n)
    )


def apply_cauchy_theta(f: MultiSeries, a_var: str, b_var: str, c_var: str) -> MultiSeries:
    """T(-1/a, ab; theta) acting on ``c_var``, with its coefficients cleared of 1/a."""
    _check_roles(f, (a_var, c_var), b_var)
    out_vars = f.vars + (b_var,)
    return _operator_sum(
        f, c_var, b_var, theta, lambda n: cauchy_theta_factor(f.ctx, out_vars, f.exact_to, a_var, n)
    )


def apply_operator(
    op: OperatorId | str,
    f: MultiSeries,
    src_var: str,
    b_var: str,
    a_var: str | None = None,
) -> MultiSeries:
    """Uniform entry point; for the Cauchy operators ``src_var`` is the c role."""
    op = OperatorId(op)
    if op.is_cauchy:
        if a_var is None:
            raise SeriesError(f"{op.value} needs an a variable")
        fn = apply_cauchy_dq if op is OperatorId.Cauchy_Dq else apply_cauchy_theta
        return fn(f, a_var, b_var, src_var)
    return apply_exp_operator(op, f, src_var, b_var)
