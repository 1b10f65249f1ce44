import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hilbloc.rings import Poly, binomial, format_fraction, gauss_solve, parse_fraction

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def test_poly_basics():
    x, y = Poly.var("x"), Poly.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.substitute({"x": 3, "y": 2}) == 5
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1


def test_poly_zero_terms_dropped():
    x = Poly.var("x")
    assert (x - x).is_zero()
    assert not (x - x).terms


def test_poly_constant_queries():
    c = Poly.const(Fraction(3, 4))
    assert c.is_constant()
    assert c.as_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        Poly.var("x").as_fraction()


def test_coefficient_map():
    y = Poly.var("y")
    p = 2 * y ** 3 + y - 5
    assert p.coefficient_map("y") == {3: Fraction(2), 1: Fraction(1), 0: Fraction(-5)}
    with pytest.raises(ValueError):
        (Poly.var("a") * Poly.var("b")).coefficient_map("a")


@given(st.integers(-30, 30), st.integers(0, 10))
def test_binomial_matches_comb(x, n):
    if x >= 0:
        assert binomial(x, n) == math.comb(x, n)
    # upper negation identity holds for all integers
    assert binomial(x, n) == (-1) ** n * binomial(n - x - 1, n)


def test_binomial_poly_argument():
    y = Poly.var("y")
    p = binomial(y, 2)
    assert p.substitute({"y": 7}) == 21


def test_gauss_solve_known():
    sol = gauss_solve([[2, 1], [1, 3]], [Fraction(5), Fraction(10)])
    assert sol == [Fraction(1), Fraction(3)]


def test_gauss_solve_singular():
    with pytest.raises(ValueError, match="singular"):
        gauss_solve([[1, 2], [2, 4]], [Fraction(1), Fraction(2)])


@given(st.lists(fractions, min_size=3, max_size=3))
def test_gauss_solve_roundtrip(xs):
    m = [[1, 1, 1], [0, 1, 2], [0, 0, 1]]
    rhs = [sum(Fraction(c) * x for c, x in zip(row, xs)) for row in m]
    assert gauss_solve(m, rhs) == [Fraction(x) for x in xs]


@given(fractions)
def test_fraction_roundtrip(q):
    assert parse_fraction(format_fraction(q)) == q
