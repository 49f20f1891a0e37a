from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.brackets import BiIndex, eval_bracket
from qmzv.qseries import QSeries, divisor_power_sums, eisenstein_gtilde, qs_qderiv


def naive_sigma(p, n):
    return sum(d**p for d in range(1, n + 1) if n % d == 0)


def naive_mul(a, b, order):
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(order + 1)]


def test_add_example():
    a = QSeries([0, 1, 3])
    b = QSeries([0, 1], 2)
    s = a + b
    assert s.order == 2
    assert list(s.coeffs) == [0, 2, 3]


def test_mul_truncates():
    q = QSeries([0, 1])
    p = q * q
    assert p.order == 1 and not p


def test_order_is_min_of_operands():
    a = QSeries([1, 2, 3, 4])
    b = QSeries([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1


def test_g1_squared_q5():
    g1 = QSeries([naive_sigma(0, n) if n else 0 for n in range(6)])
    assert (g1 * g1)[5] == 14


def test_index_beyond_order_raises():
    with pytest.raises(IndexError):
        QSeries([1, 2])[2]


def test_qderiv_examples():
    assert qs_qderiv(QSeries([0, 1, 3])) == QSeries([0, 1, 6])
    assert not qs_qderiv(QSeries([5], 4))


def test_qderiv_g3_is_three_g41():
    lhs = qs_qderiv(eval_bracket(BiIndex.of(3), 40))
    rhs = eval_bracket(BiIndex((4,), (1,)), 40) * 3
    assert lhs.first_difference(rhs) is None


@pytest.mark.parametrize(
    "k, N, coeffs",
    [
        (2, 4, [Fraction(-1, 24), 1, 3, 4, 7]),
        (4, 2, [Fraction(1, 1440), Fraction(1, 6), Fraction(3, 2)]),
        (1, 3, [0, 1, 2, 2]),
    ],
)
def test_gtilde_examples(k, N, coeffs):
    assert list(eisenstein_gtilde(k, N).coeffs) == coeffs


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_gtilde_is_bracket_plus_constant(k):
    g = eisenstein_gtilde(k, 60)
    b = eval_bracket(BiIndex.of(k), 60)
    assert (g - g[0]).first_difference(b) is None


@pytest.mark.parametrize("p", [0, 1, 3, 5])
def test_divisor_sums(p):
    assert divisor_power_sums(p, 50)[1:] == tuple(naive_sigma(p, n) for n in range(1, 51))


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series = st.lists(fractions, min_size=1, max_size=12).map(QSeries)


@settings(max_examples=60, deadline=None)
@given(series, series)
def test_mul_matches_naive(a, b):
    N = min(a.order, b.order)
    assert list((a * b).coeffs) == naive_mul(a.coeffs, b.coeffs, N)


@settings(max_examples=60, deadline=None)
@given(series, series)
def test_qderiv_is_derivation(a, b):
    lhs = qs_qderiv(a * b)
    rhs = qs_qderiv(a) * b + a * qs_qderiv(b)
    assert lhs.first_difference(rhs) is None


@settings(max_examples=40, deadline=None)
@given(series)
def test_json_roundtrip(a):
    assert QSeries.from_json(a.to_json()) == a
    assert a.to_json() == QSeries.from_json(a.to_json()).to_json()


def test_scalar_ops():
    a = QSeries([1, 2, 3])
    assert a * Fraction(1, 2) == QSeries([Fraction(1, 2), 1, Fraction(3, 2)])
    assert a / 2 == a * Fraction(1, 2)
    assert (a - a).first_difference(QSeries.zero(2)) is None
    assert (a + 1)[0] == 2
