"""
Tests for integer Laurent polynomials.
"""
import pytest

from laurent import LaurentPoly


def test_zero_coefficients_dropped():
    p = LaurentPoly({0: 1, 3: 0, -2: 0})
    assert p.items() == [(0, 1)]
    assert LaurentPoly({5: 0}).is_zero()
    assert LaurentPoly.zero().degree() is None
    assert LaurentPoly.zero().valuation() is None


def test_arithmetic():
    q = LaurentPoly.monomial(1)
    p = (q + 1) * (q - 1)
    assert p == LaurentPoly({2: 1, 0: -1})
    assert p - p == 0
    assert (q + 1) ** 3 == LaurentPoly([1, 3, 3, 1])
    assert 2 * q == q + q
    assert 1 - q == LaurentPoly({0: 1, 1: -1})


def test_bar_shift_and_degrees():
    v = LaurentPoly({1: 1, -1: 1}, "v")
    assert v.bar() == v
    p = LaurentPoly({-3: 2, 4: 1}, "v")
    assert p.degree() == 4
    assert p.valuation() == -3
    assert p.shift(3).valuation() == 0
    assert p.bar().degree() == 3


def test_coefficients_and_substitution():
    p = LaurentPoly([1, 0, 2])
    assert p.coefficients() == [1, 0, 2]
    assert p.substitute_square() == LaurentPoly({0: 1, 4: 2}, "v")
    assert p.truncate_below(1) == 1
    with pytest.raises(ValueError):
        LaurentPoly({-1: 1}).coefficients()


def test_positivity():
    assert LaurentPoly([1, 2]).is_nonnegative()
    assert not LaurentPoly([1, -2]).is_nonnegative()


def test_str():
    assert str(LaurentPoly.zero()) == "0"
    assert str(LaurentPoly.one()) == "1"
    assert str(LaurentPoly([1, 0, 2])) == "2*q^2 + 1"
    assert str(LaurentPoly({1: -1, -1: 1}, "v")) == "-v + v^-1"
