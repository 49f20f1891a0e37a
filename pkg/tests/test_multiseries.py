from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.brackets import BiIndex, eval_bracket
from qmzv.multiseries import (
    FORMAL,
    QQ,
    MSeries,
    QSeriesRing,
    RingMismatch,
    ms_coefficient,
    ms_divided_difference,
    ms_substitute,
    parse_linear_form,
)
from qmzv.qseries import QSeries


def X(i, bound=6):
    return MSeries.var(f"X{i}", bound)


def Y(i, bound=6):
    return MSeries.var(f"Y{i}", bound)


def test_mul_examples():
    assert X(1) * X(2) == MSeries({(1, 1, 0, 0): 1}, 6)
    assert not (X(1, 1) * X(2, 1))
    assert (X(1, 1) * X(2, 1)).bound == 1


def test_parse_linear_form():
    assert parse_linear_form("X1-X2") == (1, -1, 0, 0)
    assert parse_linear_form("2*Y2") == (0, 0, 0, 2)
    assert parse_linear_form("-Y1+Y2") == (0, 0, -1, 1)
    assert parse_linear_form({"X2": 3}) == (0, 3, 0, 0)
    with pytest.raises(ValueError):
        parse_linear_form("X1+1")


def test_substitute_examples():
    f = X(1) * X(1) + Y(2) * 3
    assert f.substitute() == f
    assert (X(1) * X(1)).substitute(X1="X1+X2") == X(1) * X(1) + X(1) * X(2) * 2 + X(2) * X(2)


def test_divided_difference_examples():
    assert ms_divided_difference(X(1) * X(1) - X(2) * X(2), "X") == X(1, 5) + X(2, 5)
    cube = X(1) * X(1) * X(1) - X(2) * X(2) * X(2)
    assert cube.divided_difference("X") == X(1, 5) * X(1, 5) + X(1, 5) * X(2, 5) + X(2, 5) * X(2, 5)


def test_divided_difference_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        (X(1) * X(1)).divided_difference("X")


def test_divided_difference_lowers_bound():
    assert (X(1) - X(2)).divided_difference("X").bound == 5


def test_ring_mismatch():
    f = MSeries({(0, 0, 0, 0): 1}, 2, QSeriesRing(5))
    g = MSeries({(0, 0, 0, 0): 1}, 2, QSeriesRing(7))
    # like QSeries arithmetic, mixing q-orders keeps the smaller one
    assert (f + g).ring == QSeriesRing(5)
    formal = MSeries({}, 2, FORMAL)
    with pytest.raises(RingMismatch):
        formal + f
    with pytest.raises(RingMismatch):
        formal + X(1, 2)


def test_promotion_to_qseries():
    g = MSeries({(1, 0, 0, 0): QSeries([0, 1, 3], 2)}, 3, QSeriesRing(2))
    s = g + X(1, 3)
    assert s.raw((1, 0, 0, 0)) == QSeries([1, 1, 3], 2)


def test_coefficient_normalization():
    f = MSeries({(1, 0, 2, 0): Fraction(1, 2)}, 4)
    # stored at X^(k-1) Y^d / d!, so reading (k, d) = (2, 2) multiplies by 2!
    assert ms_coefficient(f, 2, 1, 2, 0) == 1
    assert ms_coefficient(f, 3, 1, 0, 0) == 0
    with pytest.raises(ValueError):
        ms_coefficient(f, 5, 1, 1, 0)


def test_coefficient_of_g1():
    s = eval_bracket(BiIndex.of(2), 4)
    g1 = MSeries({(1, 0, 0, 0): s}, 3, QSeriesRing(4))
    assert list(ms_coefficient(g1, 2, 1, 0, 0).coeffs) == [0, 1, 3, 4, 7]
    assert ms_coefficient(g1, 1, 1, 0, 0) == QSeries.zero(4)


small = st.fractions(min_value=-3, max_value=3, max_denominator=5)
exps = st.tuples(*[st.integers(0, 3)] * 4).filter(lambda e: sum(e) <= 5)


def series(bound=5):
    return st.dictionaries(exps, small, max_size=8).map(lambda t: MSeries(t, bound))


forms = st.tuples(*[st.integers(-2, 2)] * 4).filter(any)
maps = st.fixed_dictionaries({v: forms for v in ("X1", "X2", "Y1", "Y2")})


@settings(max_examples=40, deadline=None)
@given(series(), series(), maps)
def test_substitute_is_ring_homomorphism(a, b, m):
    assert ms_substitute(a * b, m) == ms_substitute(a, m) * ms_substitute(b, m)
    assert ms_substitute(a + b, m) == ms_substitute(a, m) + ms_substitute(b, m)


@settings(max_examples=40, deadline=None)
@given(series())
def test_shear_inverse_pair(a):
    there = a.substitute(X1="X1-X2")
    back = there.substitute(X1="X1+X2")
    assert back == a


@settings(max_examples=40, deadline=None)
@given(series())
def test_divided_difference_inverts_multiplication(a):
    f = a.substitute(X1="X1", X2="X2") - a.substitute(X1="X2", X2="X1")
    dd = f.divided_difference("X")
    assert dd * (X(1, 5) - X(2, 5)) == f.clamp(5)
    g = a - a.substitute(Y1="Y2", Y2="Y1")
    assert g.divided_difference("Y") * (Y(1, 5) - Y(2, 5)) == g.clamp(5)


def test_swap_and_json():
    f = MSeries({(1, 0, 2, 0): Fraction(1, 3)}, 4)
    assert f.swap() == MSeries({(0, 1, 0, 2): Fraction(1, 3)}, 4)
    assert f.to_json() == {"bound": 4, "ring": "QQ", "terms": [{"exp": [1, 0, 2, 0], "coeff": "1/3"}]}
    assert QQ.name == "QQ"
