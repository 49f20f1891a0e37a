"""Exact integer and rational helpers.

Bernoulli numbers use the ``x/(e^x - 1)`` convention, so ``B_1 = -1/2``.
The other convention flips the sign of ``B_1`` and silently breaks every
lambda-coefficient in the stuffle product, so do not swap it out.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "Rational",
    "IntPoly",
    "bernoulli",
    "binomial",
    "factorial",
    "eulerian_poly",
    "rat_to_str",
    "rat_from_str",
]

Rational = Fraction

_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = [Fraction(1)]
_eulerian_cache: dict[int, "IntPoly"] = {}


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def bernoulli(n: int) -> Fraction:
    """Return ``B_n`` with ``sum B_n x^n/n! = x/(e^x - 1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= 3 and n % 2:
        return Fraction(0)
    with _lock:
        cache = _bernoulli_cache
        # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
        for m in range(len(cache), n + 1):
            s = sum(comb(m + 1, j) * cache[j] for j in range(m) if j < 2 or j % 2 == 0)
            cache.append(-s / (m + 1))
        return cache[n]


class IntPoly:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*X^{i}")
        return "IntPoly(" + (" + ".join(terms) or "0") + ")"


def eulerian_poly(k: int) -> IntPoly:
    """Polynomial ``P_k`` with ``P_k(X)/(1-X)^k = sum_{n>0} n^(k-1)/(k-1)! X^n``.

    ``P_k`` has degree at most ``max(k-1, 1)`` and ``P_k(1) = 1``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    with _lock:
        hit = _eulerian_cache.get(k)
    if hit is not None:
        return hit
    # Multiply the first k+1 terms of the series by (1-X)^k; all higher
    # coefficients cancel because deg P_k <= k.
    series = [Fraction(0)] + [Fraction(n ** (k - 1), factorial(k - 1)) for n in range(1, k + 1)]
    coeffs = []
    for i in range(k + 1):
        coeffs.append(sum((-1) ** j * comb(k, j) * series[i - j] for j in range(i + 1)))
    poly = IntPoly(coeffs)
    with _lock:
        _eulerian_cache[k] = poly
    return poly


def rat_to_str(x) -> str:
    """Serialize a rational as ``"p/q"``, dropping ``q`` when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)
