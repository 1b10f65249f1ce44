from fractions import Fraction

import pytest

from hilbloc.cobordism import (
    ChernVector,
    CobordismSeries,
    cp_product_class,
    from_cp_basis,
    hilb_series,
    multiply,
    product_series,
    to_cp_basis,
)
from hilbloc.partitions import enumerate_partitions


def test_cp2_chern_numbers():
    cls = cp_product_class((2,))
    assert cls.value((1, 1)) == 9
    assert cls.value((2,)) == 3


def test_cp1_squared_chern_numbers():
    cls = cp_product_class((1, 1))
    assert cls.value((1, 1)) == 8
    assert cls.value((2,)) == 4


def test_cp3_chern_numbers():
    cls = cp_product_class((3,))
    # c(CP^3) = (1+h)^4: c1^3 = 64, c1 c2 = 24, c3 = 4
    assert cls.value((1, 1, 1)) == 64
    assert cls.value((2, 1)) == 24
    assert cls.value((3,)) == 4


def test_basis_roundtrip():
    for d in (2, 4, 6):
        x = ChernVector.from_dict(
            d, {la: Fraction(i + 1, 3) for i, la in enumerate(enumerate_partitions(d))}
        )
        assert from_cp_basis(d, to_cp_basis(x)) == x


def test_multiply_is_product_of_manifolds():
    cp2 = cp_product_class((2,))
    assert multiply(cp2, cp2) == cp_product_class((2, 2))
    cp1 = cp_product_class((1, 1))
    assert multiply(cp2, cp1) == cp_product_class((2, 1, 1))


def test_multiply_point():
    cp2 = cp_product_class((2,))
    assert multiply(ChernVector.point(3), cp2) == cp2.scale(3)


def _toy_series(order):
    terms = [ChernVector.point(1)]
    for n in range(1, order + 1):
        terms.append(cp_product_class((1,) * (2 * n)))
    return CobordismSeries(order, tuple(terms))


def test_hilb_series_unit_coefficients():
    h1 = _toy_series(3)
    h2 = product_series(h1, h1)
    # exp(1*log h1 + 0*log h2) = h1
    assert hilb_series(1, 0, 3, h1, h2).terms == h1.terms
    assert hilb_series(0, 1, 3, h1, h2).terms == h2.terms


def test_series_dimension_validation():
    with pytest.raises(ValueError):
        CobordismSeries(1, (ChernVector.point(1), ChernVector.point(1)))
