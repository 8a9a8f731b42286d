"""Seeded verification matrix over (equation, q, seed) cells."""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .equations import EquationId, VerificationReport, adjudicate_thm2_4, verify
from .qcore import make_context
from .qops import OperatorId
from .series import random_series

DEFAULT_QS = (Fraction(1, 2), Fraction(2, 3), Fraction(3, 5), Fraction(9, 10))


@dataclass
class CellResult:
    eq: EquationId
    q: Fraction
    operator: OperatorId
    passed: int = 0
    failures: list[tuple[int, VerificationReport]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures


def boundary_for(eq: EquationId, q: Fraction, seed: int, degree: int, max_order: int, coef_bound: int = 9):
    ctx = make_context(q, max_order)
    return random_series(ctx, seed, eq.boundary_roles, degree, coef_bound)


def run_cell(
    eq: EquationId, q: Fraction, seeds: int, degree: int, max_order: int, coef_bound: int = 9
) -> CellResult:
    eq = EquationId(eq)
    ctx = make_context(q, max_order)
    op = adjudicate_thm2_4(ctx) if eq is EquationId.THM_2_4 else eq.operator
    cell = CellResult(eq, ctx.q, op)
    for seed in range(seeds):
        report = verify(eq, random_series(ctx, seed, eq.boundary_roles, degree, coef_bound), op=op)
        if report.ok:
            cell.passed += 1
        else:
            cell.failures.append((seed, report))
    return cell


def run_matrix(
    eqs: Sequence[EquationId],
    qs: Sequence[Fraction],
    seeds: int,
    degree: int,
    max_order: int,
    coef_bound: int = 9,
    jobs: int = 1,
) -> list[CellResult]:
    cells = [(EquationId(e), Fraction(q), seeds, degree, max_order, coef_bound) for e in eqs for q in qs]
    if jobs <= 1:
        return [run_cell(*c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_cell, *zip(*cells)))
