"""Total-degree truncated power series in ``X1, X2, Y1, Y2``.

Coefficients live in one of three rings:

* ``QQ``: exact rationals (the Bernoulli-type series),
* ``QSeriesRing(N)``: truncated q-series of order ``N``,
* ``FORMAL``: formal vectors (only additive structure and rational scaling).

Rationals embed into the other two rings, so mixing a ``QQ`` series with a
q-series one promotes it. Mixing q-series and formal coefficients raises
:class:`RingMismatch`.

A monomial is stored as its exponent tuple ``(a1, a2, b1, b2)``. By
convention the object indexed by ``(k; d)`` sits at ``X^(k-1) Y^d / d!``, so
:meth:`MSeries.coeff` multiplies the raw coefficient back by ``d1! d2!``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC
from typing import Mapping

from .qseries import QSeries

__all__ = [
    "VARS",
    "QQ",
    "FORMAL",
    "QSeriesRing",
    "RingMismatch",
    "MSeries",
    "ms_add",
    "ms_sub",
    "ms_mul",
    "ms_scale",
    "ms_substitute",
    "ms_divided_difference",
    "ms_coefficient",
    "parse_linear_form",
]

VARS = ("X1", "X2", "Y1", "Y2")
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}


class RingMismatch(TypeError):
    pass


class _Ring:
    name = "?"

    def coerce(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class _Rationals(_Ring):
    name = "QQ"

    def coerce(self, x):
        if isinstance(x, _RationalABC):
            return Fraction(x)
        raise RingMismatch(f"cannot coerce {type(x).__name__} into QQ")


class QSeriesRing(_Ring):
    def __init__(self, order: int):
        self.order = order
        self.name = f"QSeries[{order}]"

    def coerce(self, x):
        if isinstance(x, QSeries):
            return x if x.order == self.order else x.truncate(self.order)
        if isinstance(x, _RationalABC):
            return QSeries.constant(x, self.order)
        raise RingMismatch(f"cannot coerce {type(x).__name__} into {self.name}")

    def __eq__(self, other):
        return isinstance(other, QSeriesRing) and other.order == self.order

    def __hash__(self):
        return hash(("QSeries", self.order))


class _Formal(_Ring):
    name = "FORMAL"

    def coerce(self, x):
        if isinstance(x, _RationalABC):
            if x == 0:
                return x
            raise RingMismatch("nonzero rational constants have no formal counterpart")
        if hasattr(x, "terms") and hasattr(x, "weight"):
            return x
        raise RingMismatch(f"cannot coerce {type(x).__name__} into FORMAL")


QQ = _Rationals()
FORMAL = _Formal()


def _join(ra: _Ring, rb: _Ring) -> _Ring:
    if ra is QQ:
        return rb
    if rb is QQ:
        return ra
    if isinstance(ra, QSeriesRing) and isinstance(rb, QSeriesRing):
        return ra if ra.order <= rb.order else rb
    if ra is FORMAL and rb is FORMAL:
        return FORMAL
    raise RingMismatch(f"incompatible coefficient rings {ra} and {rb}")


def _deg(e) -> int:
    return e[0] + e[1] + e[2] + e[3]


_FORM_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z]\w*)?")


def parse_linear_form(form) -> tuple[int, int, int, int]:
    """Parse ``"X1-X2"``, ``"-Y2"``, ``"Y1+2*Y2"`` or a 4-tuple into coefficients.

    A constant term makes the substitution inhomogeneous and is rejected.
    """
    if isinstance(form, (tuple, list)):
        if len(form) != 4 or not all(isinstance(c, int) for c in form):
            raise ValueError(f"linear form must have 4 integer coefficients, got {form!r}")
        return tuple(form)
    if isinstance(form, Mapping):
        out = [0, 0, 0, 0]
        for v, c in form.items():
            if v not in _VAR_INDEX:
                raise ValueError(f"non-homogeneous or unknown term {v!r} in substitution")
            out[_VAR_INDEX[v]] += int(c)
        return tuple(out)
    s = form.replace(" ", "")
    if not s:
        raise ValueError("empty linear form")
    out = [0, 0, 0, 0]
    pos = 0
    while pos < len(s):
        mt = _FORM_TERM.match(s, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse linear form {form!r}")
        sign, num, var = mt.groups()
        if var is None:
            raise ValueError(f"non-homogeneous substitution {form!r}: constant term")
        if var not in _VAR_INDEX:
            raise ValueError(f"unknown variable {var!r} in {form!r}")
        c = int(num) if num else 1
        out[_VAR_INDEX[var]] += -c if sign == "-" else c
        pos = mt.end()
    return tuple(out)


class MSeries:
    """Sparse truncated series; known modulo monomials of total degree > ``bound``."""

    __slots__ = ("terms", "bound", "ring")

    def __init__(self, terms: Mapping | None = None, bound: int = 0, ring: _Ring = QQ):
        if bound < 0:
            raise ValueError("degree bound must be >= 0")
        self.bound = bound
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != 4:
                raise ValueError(f"exponent must have 4 entries, got {e}")
            if _deg(e) > bound:
                continue
            c = ring.coerce(c)
            if c:
                clean[e] = c
        self.terms: dict[tuple[int, int, int, int], object] = clean

    @classmethod
    def _raw(cls, terms: dict, bound: int, ring: _Ring) -> "MSeries":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.bound = bound
        obj.ring = ring
        return obj

    @classmethod
    def var(cls, name: str, bound: int, ring: _Ring = QQ) -> "MSeries":
        e = [0, 0, 0, 0]
        e[_VAR_INDEX[name]] = 1
        return cls({tuple(e): 1}, bound, ring)

    @classmethod
    def constant(cls, c, bound: int, ring: _Ring = QQ) -> "MSeries":
        return cls({(0, 0, 0, 0): c}, bound, ring)

    def promote(self, ring: _Ring) -> "MSeries":
        if ring == self.ring:
            return self
        return MSeries._raw({e: ring.coerce(c) for e, c in self.terms.items()}, self.bound, ring)

    def clamp(self, bound: int) -> "MSeries":
        if bound >= self.bound:
            return self
        return MSeries._raw({e: c for e, c in self.terms.items() if _deg(e) <= bound}, bound, self.ring)

    # -- ring operations ----------------------------------------------------

    def _binary_prep(self, other: "MSeries"):
        ring = _join(self.ring, other.ring)
        bound = min(self.bound, other.bound)
        return self.promote(ring).clamp(bound), other.promote(ring).clamp(bound), ring, bound

    def __add__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        a, b, ring, bound = self._binary_prep(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return MSeries._raw(out, bound, ring)

    def __neg__(self):
        return MSeries._raw({e: -c for e, c in self.terms.items()}, self.bound, self.ring)

    def __sub__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MSeries):
            return _mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MSeries":
        """Multiply every coefficient by ``c`` (a rational, or a ring element)."""
        if isinstance(c, _RationalABC):
            c = Fraction(c)
            if c == 0:
                return MSeries._raw({}, self.bound, self.ring)
            return MSeries._raw({e: v * c for e, v in self.terms.items()}, self.bound, self.ring)
        return self * MSeries.constant(c, self.bound, _ring_of(c))

    def __eq__(self, other):
        if not isinstance(other, MSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "MSeries"):
        """First monomial (graded order) where the two series differ, or ``None``.

        Comparison runs up to the smaller degree bound. For q-series
        coefficients the q-order compared is the smaller of the two.
        """
        bound = min(self.bound, other.bound)
        keys = {e for e in self.terms if _deg(e) <= bound} | {e for e in other.terms if _deg(e) <= bound}
        for e in sorted(keys, key=lambda e: (_deg(e), e)):
            a = self.terms.get(e, 0)
            b = other.terms.get(e, 0)
            if isinstance(a, QSeries) or isinstance(b, QSeries):
                diff = a - b
                if diff:
                    return e
            elif a != b:
                return e
        return None

    # -- structure -----------------------------------------------------------

    def substitute(self, **forms) -> "MSeries":
        return ms_substitute(self, forms)

    def divided_difference(self, pair: str) -> "MSeries":
        return ms_divided_difference(self, pair)

    def coeff(self, k, d):
        """Object-level coefficient at ``(k; d)`` (ints for depth one, pairs for depth two)."""
        if isinstance(k, int):
            k, d = (k, 1), (d, 0)
        return ms_coefficient(self, k[0], k[1], d[0], d[1])

    def raw(self, e):
        return self.terms.get(tuple(e), 0)

    def swap(self) -> "MSeries":
        """``f(X1, X2; Y1, Y2) -> f(X2, X1; Y2, Y1)``."""
        return MSeries._raw(
            {(e[1], e[0], e[3], e[2]): c for e, c in self.terms.items()}, self.bound, self.ring
        )

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def to_json(self) -> dict:
        from .exact_core import rat_to_str

        def enc(c):
            if isinstance(c, QSeries):
                return c.to_json()
            if isinstance(c, _RationalABC):
                return rat_to_str(c)
            return c.to_json()

        return {
            "bound": self.bound,
            "ring": self.ring.name,
            "terms": [
                {"exp": list(e), "coeff": enc(c)}
                for e, c in sorted(self.terms.items(), key=lambda t: (_deg(t[0]), t[0]))
            ],
        }

    def __repr__(self):
        return f"MSeries(bound={self.bound}, ring={self.ring}, terms={len(self.terms)})"


def _ring_of(c) -> _Ring:
    if isinstance(c, QSeries):
        return QSeriesRing(c.order)
    if isinstance(c, _RationalABC):
        return QQ
    return FORMAL


def _mul(a: MSeries, b: MSeries) -> MSeries:
    if a.ring is FORMAL and b.ring is FORMAL:
        raise RingMismatch("formal vectors cannot be multiplied with each other")
    ring = _join(a.ring, b.ring)
    bound = min(a.bound, b.bound)
    out: dict = {}
    bt = sorted(b.terms.items(), key=lambda t: _deg(t[0]))
    for ea, ca in a.terms.items():
        da = _deg(ea)
        if da > bound:
            continue
        for eb, cb in bt:
            if da + _deg(eb) > bound:
                break
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
            p = ca * cb
            if e in out:
                out[e] = out[e] + p
            else:
                out[e] = p
    return MSeries._raw({e: ring.coerce(c) for e, c in out.items() if c}, bound, ring)


def ms_add(a: MSeries, b: MSeries) -> MSeries:
    return a + b


def ms_sub(a: MSeries, b: MSeries) -> MSeries:
    return a - b


def ms_mul(a: MSeries, b: MSeries) -> MSeries:
    return a * b


def ms_scale(a: MSeries, c) -> MSeries:
    return a.scale(c)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _form_powers(form: tuple[int, int, int, int], top: int) -> list[dict]:
    unit = {(0, 0, 0, 0): 1}
    lin = {}
    for i, c in enumerate(form):
        if c:
            e = [0, 0, 0, 0]
            e[i] = 1
            lin[tuple(e)] = c
    pows = [unit]
    for _ in range(top):
        pows.append(_poly_mul(pows[-1], lin))
    return pows


def ms_substitute(a: MSeries, forms: Mapping) -> MSeries:
    """Compose ``a`` with a homogeneous linear change of variables.

    ``forms`` maps variable names to linear forms (strings like ``"X1-X2"``,
    4-tuples, or ``{var: coeff}`` dicts); unmapped variables stay fixed.
    """
    coeffs = []
    for i, v in enumerate(VARS):
        if v in forms:
            coeffs.append(parse_linear_form(forms[v]))
        else:
            unit = [0, 0, 0, 0]
            unit[i] = 1
            coeffs.append(tuple(unit))
    unknown = set(forms) - set(VARS)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    top = a.bound
    pows = [_form_powers(f, top) for f in coeffs]
    # target monomial -> list of (integer multiplier, source coefficient)
    acc: dict = {}
    pair_cache: dict = {}
    for e, c in a.terms.items():
        key01 = (e[0], e[1])
        p01 = pair_cache.get(("x",) + key01)
        if p01 is None:
            p01 = _poly_mul(pows[0][e[0]], pows[1][e[1]])
            pair_cache[("x",) + key01] = p01
        key23 = (e[2], e[3])
        p23 = pair_cache.get(("y",) + key23)
        if p23 is None:
            p23 = _poly_mul(pows[2][e[2]], pows[3][e[3]])
            pair_cache[("y",) + key23] = p23
        for t, n in _poly_mul(p01, p23).items():
            acc.setdefault(t, []).append((n, c))
    out = {}
    for t, contributions in acc.items():
        out_c = _lincomb(contributions)
        if out_c:
            out[t] = out_c
    return MSeries._raw(out, a.bound, a.ring)


def _lincomb(contributions):
    first = contributions[0][1]
    if isinstance(first, QSeries):
        return _qseries_lincomb(contributions)
    total = None
    for n, c in contributions:
        term = c * n
        total = term if total is None else total + term
    return total


def _qseries_lincomb(contributions) -> QSeries:
    """``sum n_i * s_i`` for integer ``n_i`` and q-series ``s_i`` of one order."""
    from math import lcm

    order = min(s.order for _, s in contributions)
    den = 1
    for _, s in contributions:
        den = lcm(den, *(c.denominator for c in s.coeffs[: order + 1]))
    out = [0] * (order + 1)
    for n, s in contributions:
        for i in range(order + 1):
            c = s.coeffs[i]
            if c:
                out[i] += n * c.numerator * (den // c.denominator)
    return QSeries._raw(tuple(Fraction(x, den) for x in out), order)


def ms_divided_difference(a: MSeries, pair: str) -> MSeries:
    """Exact quotient by ``X1 - X2`` (``pair="X"``) or ``Y1 - Y2`` (``pair="Y"``).

    The input must vanish on the diagonal; the result has bound ``bound - 1``.
    """
    p = pair.upper().replace("1", "").replace("2", "")
    if p not in ("X", "Y", "XX", "YY"):
        raise ValueError(f"pair must be 'X' or 'Y', got {pair!r}")
    i, j = (0, 1) if p[0] == "X" else (2, 3)
    diag = ms_substitute(a, {VARS[j]: VARS[i]})
    if diag:
        raise ValueError(
            f"divided difference by {VARS[i]}-{VARS[j]}: input does not vanish on the diagonal"
        )
    if a.bound == 0:
        return MSeries._raw({}, 0, a.ring)
    acc: dict = {}
    for e, c in a.terms.items():
        ai, aj = e[i], e[j]
        for s in range(ai):
            t = list(e)
            t[i] = s
            t[j] = aj + ai - 1 - s
            acc.setdefault(tuple(t), []).append((1, c))
    out = {}
    for t, contributions in acc.items():
        c = _lincomb(contributions)
        if c:
            out[t] = c
    return MSeries._raw(out, a.bound - 1, a.ring)


def ms_coefficient(a: MSeries, k1: int, k2: int = 1, d1: int = 0, d2: int = 0):
    """Coefficient of ``X1^(k1-1) X2^(k2-1) Y1^d1 Y2^d2`` times ``d1! d2!``."""
    if min(k1, k2) < 1 or min(d1, d2) < 0:
        raise ValueError("need k >= 1 and d >= 0")
    e = (k1 - 1, k2 - 1, d1, d2)
    if _deg(e) > a.bound:
        raise ValueError(f"monomial of degree {_deg(e)} exceeds degree bound {a.bound}")
    c = a.terms.get(e)
    if c is None:
        if isinstance(a.ring, QSeriesRing):
            return QSeries.zero(a.ring.order)
        return Fraction(0)
    return c * (factorial(d1) * factorial(d2))

