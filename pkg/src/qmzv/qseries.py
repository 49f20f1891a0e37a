"""Truncated power series in ``q`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from numbers import Rational as _RationalABC

from .exact_core import bernoulli, rat_to_str

__all__ = [
    "QSeries",
    "qs_add",
    "qs_sub",
    "qs_mul",
    "qs_scale",
    "qs_qderiv",
    "divisor_power_sums",
    "eisenstein_gtilde",
]


class QSeries:
    """A series known modulo ``q^(order+1)``.

    Arithmetic never invents coefficients: the result of a binary operation
    carries the smaller of the two orders. Rationals and ints act as
    constant series of unbounded order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        elif len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((), order)

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        return cls((c,), order)

    @classmethod
    def _raw(cls, coeffs: tuple, order: int) -> "QSeries":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient q^{n} unknown at order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return QSeries._raw(self.coeffs[: order + 1], order)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            return QSeries._raw(tuple(a[i] + b[i] for i in range(n + 1)), n)
        if isinstance(other, _RationalABC):
            return QSeries._raw((self.coeffs[0] + other,) + self.coeffs[1:], self.order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, (QSeries, _RationalABC)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RationalABC):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return _convolve(self, other)
        if isinstance(other, _RationalABC):
            if other == 0:
                return QSeries._raw((Fraction(0),) * (self.order + 1), self.order)
            if other == 1:
                return self
            return QSeries._raw(tuple(c * other for c in self.coeffs), self.order)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RationalABC):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        """Equality up to the common order (see :meth:`equal_to_order`)."""
        if isinstance(other, QSeries):
            return self.first_difference(other) is None
        if isinstance(other, _RationalABC):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    __hash__ = None

    def first_difference(self, other: "QSeries") -> int | None:
        """Lowest ``n`` up to the common order where coefficients differ."""
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        for i in range(n + 1):
            if a[i] != b[i]:
                return i
        return None

    def equal_to_order(self, other: "QSeries") -> tuple[bool, int]:
        """Return ``(equal, order)`` where ``order`` is the order compared."""
        return self.first_difference(other) is None, min(self.order, other.order)

    # -- misc -------------------------------------------------------------

    def qderiv(self) -> "QSeries":
        return qs_qderiv(self)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [rat_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls([Fraction(c) for c in data["coeffs"]], data["order"])

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            if n == 0:
                terms.append(str(c))
            else:
                mono = "q" if n == 1 else f"q^{n}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        body = " + ".join(terms) or "0"
        return f"{body} + O(q^{self.order + 1})"


def _convolve(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.order, b.order)
    # Clear denominators once, convolve integers, divide back.
    da = lcm(*(c.denominator for c in a.coeffs[: n + 1]))
    db = lcm(*(c.denominator for c in b.coeffs[: n + 1]))
    ia = [c.numerator * (da // c.denominator) for c in a.coeffs[: n + 1]]
    ib = [c.numerator * (db // c.denominator) for c in b.coeffs[: n + 1]]
    nza = [(i, x) for i, x in enumerate(ia) if x]
    out = [0] * (n + 1)
    for j, y in enumerate(ib):
        if not y:
            continue
        for i, x in nza:
            if i + j > n:
                break
            out[i + j] += x * y
    den = da * db
    if den == 1:
        return QSeries._raw(tuple(Fraction(x) for x in out), n)
    return QSeries._raw(tuple(Fraction(x, den) for x in out), n)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_sub(a: QSeries, b: QSeries) -> QSeries:
    return a - b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_scale(a: QSeries, c) -> QSeries:
    return a * Fraction(c)


def qs_qderiv(a: QSeries) -> QSeries:
    """Apply ``q d/dq``: the coefficient of ``q^n`` is multiplied by ``n``."""
    return QSeries._raw(tuple(n * c for n, c in enumerate(a.coeffs)), a.order)


@lru_cache(maxsize=None)
def divisor_power_sums(power: int, order: int) -> tuple[int, ...]:
    """``sigma_power(n)`` for ``0 <= n <= order`` (with ``sigma(0) = 0``)."""
    out = [0] * (order + 1)
    for d in range(1, order + 1):
        dp = d**power
        for m in range(d, order + 1, d):
            out[m] += dp
    return tuple(out)


def eisenstein_gtilde(k: int, order: int) -> QSeries:
    """Normalized Eisenstein series ``-B_k/(2 k!) + sum sigma_{k-1}(n) q^n/(k-1)!``.

    For ``k = 1`` this is ``g(1)``, which has no constant term.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    f = factorial(k - 1)
    sig = divisor_power_sums(k - 1, order)
    coeffs = [Fraction(s, f) for s in sig]
    if k >= 2:
        coeffs[0] = -bernoulli(k) / (2 * factorial(k))
    return QSeries(coeffs, order)
