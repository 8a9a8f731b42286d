"""Exact q-calculus on truncated multivariate power series.

Implements the q-derivative, the theta operator, the q-exponential and Cauchy
operators, and two independent solvers for six q-functional equations.
"""

from .equations import (
    DegenerationKind,
    EquationId,
    VerificationReport,
    adjudicate_thm2_4,
    degeneration_check,
    residual,
    solve_operator,
    solve_recurrence,
    verify,
)
from .qcore import (
    DegenerateQError,
    QContext,
    Rational,
    format_rational,
    gauss_binomial,
    make_context,
    parse_rational,
    q_factorial,
    q_pochhammer_scalar,
)
from .qops import (
    OperatorId,
    apply_cauchy_dq,
    apply_cauchy_theta,
    apply_exp_operator,
    apply_operator,
    dq,
    eta_inv,
    pochhammer_series,
    theta,
)
from .series import (
    MultiSeries,
    NotDivisibleError,
    OutsideExactRegion,
    SeriesError,
    add,
    coefficient,
    dilate,
    divide_by_var,
    extend_vars,
    make_series,
    mul,
    mul_by_monomial,
    random_series,
    scale,
    set_var_zero,
)
from .serialize import dumps, loads, parse_poly, render

__version__ = "0.1.0"
