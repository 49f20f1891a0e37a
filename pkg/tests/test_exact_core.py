from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmzv.exact_core import IntPoly, bernoulli, binomial, eulerian_poly, rat_from_str, rat_to_str


def bernoulli_by_inversion(n_max):
    """Invert (e^x - 1)/x = sum x^n/(n+1)! as a power series; B_n = n! * coeff."""
    a = [Fraction(1, factorial(n + 1)) for n in range(n_max + 1)]
    inv = [Fraction(1)]
    for n in range(1, n_max + 1):
        inv.append(-sum(a[j] * inv[n - j] for j in range(1, n + 1)))
    return [inv[n] * factorial(n) for n in range(n_max + 1)]


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_matches_series_inversion():
    ref = bernoulli_by_inversion(40)
    assert [bernoulli(n) for n in range(41)] == ref


@pytest.mark.parametrize("n", [2, 4, 6, 10, 20, 30])
def test_bernoulli_matches_mpmath(n):
    b = bernoulli(n)
    with mpmath.workdps(40):
        ref = mpmath.bernoulli(n)
        assert abs(ref - mpmath.mpf(b.numerator) / b.denominator) <= abs(ref) * mpmath.mpf(10) ** -30


@pytest.mark.parametrize("n", range(1, 21))
def test_odd_bernoulli_vanish(n):
    assert bernoulli(2 * n + 1) == 0


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize(
    "k, coeffs",
    [
        (1, [0, 1]),
        (3, [0, Fraction(1, 2), Fraction(1, 2)]),
        (4, [0, Fraction(1, 6), Fraction(4, 6), Fraction(1, 6)]),
    ],
)
def test_eulerian_examples(k, coeffs):
    assert eulerian_poly(k) == IntPoly(coeffs)


def _divide_by_one_minus_x_power(coeffs, k, order):
    series = list(coeffs) + [Fraction(0)] * (order + 1 - len(coeffs))
    for _ in range(k):
        # multiply by 1/(1-X): running prefix sums
        acc = Fraction(0)
        for i in range(order + 1):
            acc += series[i]
            series[i] = acc
    return series[: order + 1]


@pytest.mark.parametrize("k", range(1, 11))
def test_eulerian_expansion(k):
    got = _divide_by_one_minus_x_power(eulerian_poly(k).coeffs, k, 50)
    want = [Fraction(n ** (k - 1), factorial(k - 1)) if n else Fraction(0) for n in range(51)]
    assert got == want


@pytest.mark.parametrize("k", range(1, 13))
def test_eulerian_at_one(k):
    assert eulerian_poly(k)(1) == 1


def test_binomial_conventions():
    assert binomial(3, 1) == 3
    assert binomial(1, -1) == 0
    assert binomial(0, 0) == 1
    assert binomial(2, 5) == 0


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_string_roundtrip(p, q):
    x = Fraction(p, q)
    assert rat_from_str(rat_to_str(x)) == x
    assert "/" not in rat_to_str(Fraction(p))


def test_intpoly_trims_trailing_zeros():
    p = IntPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert p == IntPoly([1, 2])
    assert hash(p) == hash(IntPoly([1, 2]))
