from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmzv.analytic import g_float, limit_check, mzv_oracle, richardson
from qmzv.brackets import BiIndex, eval_bracket


@pytest.mark.parametrize(
    "ks, ref",
    [((2,), math.pi**2 / 6), ((4,), math.pi**4 / 90), ((3,), float(mpmath.zeta(3)))],
)
def test_mzv_depth_one(ks, ref):
    assert abs(mzv_oracle(ks) - ref) < 1e-9


def test_mzv_euler_identity():
    # zeta(2,1) = zeta(3) is a consistency check of the depth-two tail, not an input
    assert abs(mzv_oracle((2, 1)) - float(mpmath.zeta(3))) < 1e-5
    assert abs(mzv_oracle((3, 1)) - math.pi**4 / 360) < 1e-9


def test_mzv_rejects_divergent():
    with pytest.raises(ValueError):
        mzv_oracle((1, 2))


@pytest.mark.parametrize("ks", [(2,), (3,), (1,), (2, 1), (1, 1), (3, 1, 2)])
@pytest.mark.parametrize("q", [0.1, 0.3])
def test_g_float_matches_exact_series(ks, q):
    # for small q the exact q-expansion to order 80 is already converged
    s = eval_bracket(BiIndex.of(ks), 80)
    exact = sum(float(c) * q**n for n, c in enumerate(s.coeffs))
    assert g_float(ks, q) == pytest.approx(exact, rel=1e-12)


def test_g_float_near_one_matches_asymptotics():
    # sum sigma_1(n) e^{-nt} = pi^2/(6t^2) - 1/(2t) + 1/24 + O(e^{-4 pi^2/t})
    q = 0.9
    t = -math.log(q)
    ref = math.pi**2 / (6 * t * t) - 1 / (2 * t) + 1 / 24
    assert g_float((2,), q) == pytest.approx(ref, rel=1e-12)
    scaled = (1 - q) ** 2 * g_float((2,), q)
    assert scaled == pytest.approx(1.4348, abs=1e-4)


def test_g_float_depth_two_at_moderate_q():
    val = 0.05**3 * g_float((2, 1), 0.95, cutoff=4000)
    assert 0.5 < val < mzv_oracle((2, 1))
    assert val == pytest.approx(0.05**3 * g_float((2, 1), 0.95), rel=1e-12)


def test_g_float_rejects_bad_q():
    for q in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            g_float((2,), q)
    with pytest.raises(ValueError):
        g_float(BiIndex((2,), (1,)), 0.5)


def test_richardson_exact_on_quadratics():
    f = lambda h: 3.0 + 2.0 * h - 5.0 * h * h
    assert richardson([f(2.0**-j) for j in range(3, 7)]) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("ks, tol", [((2,), 1e-3), ((3,), 1e-3), ((4,), 1e-3), ((2, 1), 1e-2)])
def test_limit_check(ks, tol):
    rep = limit_check(ks, tol)
    assert rep.passed and rep.abs_error <= tol
    eps = rep.epsilons
    assert all(a > b for a, b in zip(eps, eps[1:]))
    assert all(math.isfinite(s) for s in rep.samples)
    js = rep.to_json()
    assert js["passed"] and js["index"]["k"] == list(ks)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_monotone_refinement(k):
    errs = [limit_check((k,), jmax=j).abs_error for j in range(6, 12)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 0.99), st.sampled_from([2, 3, 4]))
def test_scaled_value_bounded(q, k):
    v = (1 - q) ** k * g_float((k,), q)
    assert np.isfinite(v) and 0 < v < 2
