from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, poly, series_st, to_sympy
from qfunc import make_context
from qfunc.series import (
    NotDivisibleError,
    OutsideExactRegion,
    SeriesError,
    add,
    coefficient,
    dilate,
    divide_by_var,
    extend_vars,
    is_canonical,
    make_series,
    mul,
    mul_by_monomial,
    random_series,
    scale,
    set_var_zero,
)

F = Fraction
CTX = make_context(F(1, 2), 8)


def test_make_series_basic():
    f = make_series(CTX, ["a"], 4, [([1], 1)])
    assert dict(f.terms) == {(1,): 1}
    assert f.exact_to == 4


def test_make_series_cancellation():
    f = make_series(CTX, ["a", "b"], 2, [([1, 0], 1), ([1, 0], -1)])
    assert f.is_zero


@pytest.mark.parametrize(
    "vars,exact_to,terms,msg",
    [
        (["a"], 1, [([2], 1)], "degree overflow"),
        (["a", "b"], 2, [([1], 1)], "dimension mismatch"),
        (["a", "a"], 2, [], "duplicate"),
        (["a"], 9, [], "exact_to"),
        (["a"], 2, [([-1], 1)], "negative"),
    ],
)
def test_make_series_errors(vars, exact_to, terms, msg):
    with pytest.raises(SeriesError, match=msg):
        make_series(CTX, vars, exact_to, terms)


def test_add_examples():
    a = poly(CTX, "a", ["a"], 4)
    assert add(a, scale(a, -1)).is_zero
    f = add(poly(CTX, "a", ["a", "b"], 4), poly(CTX, "b", ["a", "b"], 2))
    assert f == poly(CTX, "a + b", ["a", "b"], 2)
    g = add(poly(CTX, "1 + a", ["a"], 3), poly(CTX, "a + a^2", ["a"], 3))
    assert g == poly(CTX, "1 + 2*a + a^2", ["a"], 3)


def test_add_mismatch():
    with pytest.raises(SeriesError, match="variable mismatch"):
        add(poly(CTX, "a", ["a"]), poly(CTX, "a", ["a", "b"]))
    with pytest.raises(SeriesError, match="context mismatch"):
        add(poly(CTX, "a", ["a"]), poly(make_context(F(1, 3), 8), "a", ["a"]))


def test_mul_examples():
    f = poly(CTX, "1 + a - 3*a^2", ["a", "b"], 4)
    one = poly(CTX, "1", ["a", "b"], 4)
    assert mul(f, one) == f
    t = mul(poly(CTX, "1 - a", ["a"], 3), poly(CTX, "1 + a + a^2 + a^3", ["a"], 3))
    assert t == poly(CTX, "1", ["a"], 3)
    d = mul(poly(CTX, "a + b", ["a", "b"], 2), poly(CTX, "a - b", ["a", "b"], 2))
    assert d == poly(CTX, "a^2 - b^2", ["a", "b"], 2)


def test_scale_examples():
    assert scale(poly(CTX, "a + b"), 0).is_zero
    assert scale(poly(CTX, "a"), -1) == poly(CTX, "-a")
    assert scale(poly(CTX, "2*a + 3*b"), F(1, 2)) == poly(CTX, "a + 3/2*b")


def test_extend_vars():
    f = poly(CTX, "a^2 + 2*a", ["a"], 5)
    g = extend_vars(f, ["a", "b", "c"])
    assert dict(g.terms) == {(2, 0, 0): 1, (1, 0, 0): 2}
    assert extend_vars(poly(CTX, "0", ["a"], 3), ["a", "b"]).is_zero
    h = mul_by_monomial(extend_vars(poly(CTX, "a^2", ["a"], 5), ["a", "b"]), (0, 1))
    assert dict(h.terms) == {(2, 1): 1}
    # new variables may also be placed in front
    assert dict(extend_vars(f, ["z", "a"]).terms) == {(0, 2): 1, (0, 1): 2}
    with pytest.raises(SeriesError):
        extend_vars(f, ["b"])


def test_dilate_examples():
    assert dilate(poly(CTX, "a^2", ["a"]), "a", 1) == poly(CTX, "1/4*a^2", ["a"])
    f = poly(CTX, "a^2 + 3*a*b")
    assert dilate(f, "b", 0) == f
    assert dilate(poly(CTX, "a", ["a"]), "a", -1) == poly(CTX, "2*a", ["a"])
    with pytest.raises(SeriesError, match="unknown variable"):
        dilate(f, "z", 1)


def test_mul_by_monomial_examples():
    one = poly(CTX, "1", ["a", "b"], 4)
    assert dict(mul_by_monomial(one, (1, 0)).terms) == {(1, 0): 1}
    assert mul_by_monomial(poly(CTX, "a + b", ["a", "b"], 4), (0, 1)).terms == poly(CTX, "a*b + b^2").terms
    ctx4 = make_context(F(1, 2), 4)
    f = make_series(ctx4, ["a", "b"], 3, [((1, 0), 1)])
    assert mul_by_monomial(f, (1, 1)).exact_to == 4
    with pytest.raises(SeriesError, match="overflow"):
        mul_by_monomial(make_series(ctx4, ["a"], 3, [((3,), 1)]), (2,))
    # truncate mode drops what is pushed past max_order instead
    g = mul_by_monomial(make_series(ctx4, ["a"], 4, [((4,), 1), ((1,), 1)]), (1,), truncate=True)
    assert dict(g.terms) == {(2,): 1} and g.exact_to == 4


def test_divide_by_var_examples():
    f = divide_by_var(poly(CTX, "a*b + b^2", ["a", "b"], 4), "b")
    assert f == poly(CTX, "a + b", ["a", "b"], 3)
    with pytest.raises(NotDivisibleError):
        divide_by_var(poly(CTX, "a + b"), "b")
    z = divide_by_var(poly(CTX, "0", ["a", "b"], 4), "a")
    assert z.is_zero and z.exact_to == 3


def test_set_var_zero_examples():
    assert set_var_zero(poly(CTX, "c + b - a*b", ["a", "b", "c"], 3), "b") == poly(CTX, "c", ["a", "b", "c"], 3)
    f = poly(CTX, "a^2 + a", ["a", "b"])
    assert set_var_zero(f, "b") == f
    assert set_var_zero(poly(CTX, "b^2", ["a", "b"]), "b").is_zero


def test_coefficient_examples():
    f = poly(CTX, "a + 3/2*b", ["a", "b"], 2)
    assert coefficient(f, (0, 1)) == F(3, 2)
    assert coefficient(poly(CTX, "a", ["a", "b"], 2), (0, 1)) == 0
    with pytest.raises(OutsideExactRegion):
        coefficient(f, (2, 1))


def test_random_series_contract():
    s1 = random_series(CTX, 7, ["a", "c"], 6, 9)
    assert s1 == random_series(CTX, 7, ["a", "c"], 6, 9)
    assert random_series(CTX, 7, ["a", "c"], 6, 0).is_zero
    assert s1 != random_series(CTX, 8, ["a", "c"], 6, 9)
    assert all(abs(c) <= 9 and c.denominator == 1 for c in s1.terms.values())
    assert is_canonical(s1) and s1.max_degree() <= 6


def test_mul_matches_sympy():
    f = poly(CTX, "1 + 2*a - b + 1/3*a*b^2", ["a", "b"], 4)
    g = poly(CTX, "3 - a^2 + 5*b^3", ["a", "b"], 4)
    assert mul(f, g) == from_sympy(to_sympy(f) * to_sympy(g), CTX, ["a", "b"], 4)


triples = st.tuples(*(series_st(CTX, ("a", "b"), 4) for _ in range(3)))


@settings(max_examples=40, deadline=None)
@given(triples)
def test_ring_laws(fgh):
    f, g, h = fgh
    assert add(f, g) == add(g, f)
    assert mul(f, g) == mul(g, f)
    assert add(add(f, g), h) == add(f, add(g, h))
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))
    for r in (add(f, g), mul(f, g), scale(f, F(-2, 7))):
        assert is_canonical(r)


@settings(max_examples=40, deadline=None)
@given(series_st(CTX, ("a", "b"), 4), st.integers(-3, 3), st.integers(-3, 3))
def test_dilate_composes(f, m, n):
    assert dilate(dilate(f, "a", m), "a", n) == dilate(f, "a", m + n)


@settings(max_examples=40, deadline=None)
@given(series_st(CTX, ("a", "b"), 4), st.sampled_from(["a", "b"]))
def test_shift_roundtrips(f, v):
    e = f.unit(v)
    shifted = mul_by_monomial(f, e)
    assert set_var_zero(shifted, v).is_zero
    back = divide_by_var(shifted, v)
    assert back == f
    assert is_canonical(shifted) and is_canonical(back)
