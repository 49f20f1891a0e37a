"""Bernoulli and Eisenstein realizations of the formal double Eisenstein space.

The rational family is built from

    b1(X; Y) = -1/4 (coth(X/2) + coth(Y/2)) + 1/2 (1/X + 1/Y)

Using ``(x/2) coth(x/2) = sum_n B_2n x^2n / (2n)!`` the poles cancel and

    b1(X; Y) = -1/2 sum_{n>=1} B_2n / (2n)! (X^(2n-1) + Y^(2n-1)),

which is what :func:`b1_series` stores. The q-series family adds the
generating series of the brackets ``g(k; d)`` and ``g(k1, k2; d1, d2)``.

Depth-one series are kept one degree above the table bound so that divided
differences of them land exactly on the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial

from .brackets import BiIndex, eval_bracket
from .exact_core import bernoulli
from .formal_space import FormalVec
from .multiseries import QQ, MSeries, QSeriesRing, ms_coefficient
from .qseries import QSeries, eisenstein_gtilde, qs_qderiv

__all__ = [
    "b1_series",
    "b2_series",
    "pb_series",
    "r_stuffle",
    "r_shuffle",
    "g_generating_series",
    "RealizationTable",
    "SeriesReport",
    "e_series",
    "verify_betadsh",
    "verify_lemma_algstruct",
    "verify_eisenstein",
    "verify_realization_images",
    "realize",
    "realize_bernoulli",
]

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def b1_series(D: int) -> MSeries:
    """Pole-free ``b1(X1; Y1)`` up to total degree ``D`` (odd and symmetric)."""
    terms = {}
    for n in range(1, D // 2 + 2):
        if 2 * n - 1 > D:
            break
        c = -bernoulli(2 * n) / (2 * factorial(2 * n))
        terms[(2 * n - 1, 0, 0, 0)] = c
        terms[(0, 0, 2 * n - 1, 0)] = c
    return MSeries(terms, D, QQ)


def _at(f: MSeries, x: str, y: str) -> MSeries:
    """Evaluate a series in ``(X1; Y1)`` at linear forms ``(x; y)``."""
    return f.substitute(X1=x, Y1=y)


def _pair(f: MSeries, x1: str, y1: str, x2: str, y2: str) -> MSeries:
    return f.substitute(X1=x1, X2=x2, Y1=y1, Y2=y2)


def r_stuffle(f1: MSeries) -> MSeries:
    """``(f1(X1; Y1+Y2) - f1(X2; Y1+Y2)) / (X1 - X2)``."""
    return (_at(f1, "X1", "Y1+Y2") - _at(f1, "X2", "Y1+Y2")).divided_difference("X")


def r_shuffle(f1: MSeries) -> MSeries:
    """``(f1(X1+X2; Y1) - f1(X1+X2; Y2)) / (Y1 - Y2)``."""
    return (_at(f1, "X1+X2", "Y1") - _at(f1, "X1+X2", "Y2")).divided_difference("Y")


def _product_split(f1: MSeries, g1: MSeries | None = None) -> MSeries:
    """``f1(X1; Y1) * g1(X2; Y2)`` for depth-one series ``f1, g1``."""
    if g1 is None:
        g1 = f1
    return f1 * _at(g1, "X2", "Y2")


@lru_cache(maxsize=None)
def pb_series(D: int) -> MSeries:
    return _product_split(b1_series(D))


@lru_cache(maxsize=None)
def b2_series(D: int) -> MSeries:
    """Depth-two Bernoulli series, exact up to total degree ``D``."""
    b1 = b1_series(D + 1)
    pb = pb_series(D)
    rsh = r_shuffle(b1)
    rst = r_stuffle(b1)
    return (
        pb * Fraction(1, 3)
        + _pair(pb, "X1-X2", "Y1", "X2", "Y1+Y2") * Fraction(1, 3)
        - _pair(rsh, "X1-X2", "Y1", "X2", "Y1+Y2") * Fraction(5, 12)
        - _pair(rsh, "-X2", "-Y2", "X1", "Y1") * Fraction(1, 12)
        + _pair(rsh, "X2-X1", "Y2", "X1", "Y1+Y2") * Fraction(1, 4)
        - rst * Fraction(5, 12)
        - _pair(rst, "X2-X1", "-Y1", "X2", "Y1+Y2") * Fraction(1, 12)
        + _pair(rst, "X1-X2", "-Y2", "X1", "Y1+Y2") * Fraction(1, 4)
    )


def g_generating_series(D: int, N: int) -> tuple[MSeries, MSeries]:
    """Generating series of the brackets, with ``g(k;d)`` at ``X^(k-1) Y^d / d!``."""
    ring = QSeriesRing(N)
    g1 = {}
    for k in range(1, D + 2):
        for d in range(D + 2 - k):
            g1[(k - 1, 0, d, 0)] = eval_bracket(BiIndex((k,), (d,)), N) / factorial(d)
    g2 = {}
    for total in range(D + 1):
        for a1 in range(total + 1):
            for a2 in range(total - a1 + 1):
                for d1 in range(total - a1 - a2 + 1):
                    d2 = total - a1 - a2 - d1
                    s = eval_bracket(BiIndex((a1 + 1, a2 + 1), (d1, d2)), N)
                    g2[(a1, a2, d1, d2)] = s / (factorial(d1) * factorial(d2))
    return MSeries(g1, D, ring), MSeries(g2, D, ring)


@dataclass
class SeriesReport:
    """Outcome of a power-series identity check."""

    label: str
    holds: bool
    bound: int
    q_order: int | None = None
    monomial: tuple | None = None
    q_degree: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"label": self.label, "holds": self.holds, "degree_bound": self.bound}
        if self.q_order is not None:
            out["q_order"] = self.q_order
        if not self.holds:
            out["first_monomial"] = list(self.monomial)
            if self.q_degree is not None:
                out["first_q_degree"] = self.q_degree
        out.update(self.details)
        return out


def _compare(label: str, lhs: MSeries, rhs: MSeries, q_order: int | None = None) -> SeriesReport:
    bound = min(lhs.bound, rhs.bound)
    e = lhs.first_difference(rhs)
    if e is None:
        return SeriesReport(label, True, bound, q_order)
    a, b = lhs.raw(e), rhs.raw(e)
    qdeg = None
    if isinstance(a, QSeries) or isinstance(b, QSeries):
        diff = a - b
        qdeg = next(i for i, c in enumerate(diff.coeffs) if c)
    return SeriesReport(label, False, bound, q_order, e, qdeg)


def verify_betadsh(D: int = 12) -> list[SeriesReport]:
    """Both double-shuffle equalities for the Bernoulli family up to degree ``D``."""
    b1 = b1_series(D + 1)
    b2 = b2_series(D)
    pb = pb_series(D)
    line1 = b2 + b2.swap() + r_stuffle(b1)
    line2 = _pair(b2, "X1+X2", "Y1", "X2", "Y2-Y1") + _pair(b2, "X1+X2", "Y2", "X1", "Y1-Y2") + r_shuffle(b1)
    return [_compare("betadsh stuffle", pb, line1), _compare("betadsh shuffle", pb, line2)]


class RealizationTable:
    """Generating series of both realizations at degree bound ``D`` and q-order ``N``.

    Depth-one series (``b1``, ``g1``, ``e1``) are built to degree ``D + 1``;
    depth-two ones (``b2``, ``g2``, ``e2``) to ``D`` and only on first use.
    """

    def __init__(self, D: int = 8, N: int = 40):
        if D < 0 or N < 0:
            raise ValueError("D and N must be >= 0")
        self.D = D
        self.N = N

    @cached_property
    def b1(self) -> MSeries:
        return b1_series(self.D + 1)

    @cached_property
    def b2(self) -> MSeries:
        return b2_series(self.D)

    @cached_property
    def g1(self) -> MSeries:
        ring = QSeriesRing(self.N)
        terms = {}
        for k in range(1, self.D + 3):
            for d in range(self.D + 3 - k):
                terms[(k - 1, 0, d, 0)] = eval_bracket(BiIndex((k,), (d,)), self.N) / factorial(d)
        return MSeries(terms, self.D + 1, ring)

    @cached_property
    def g2(self) -> MSeries:
        return g_generating_series(self.D, self.N)[1]

    @cached_property
    def e1(self) -> MSeries:
        return self.b1 + self.g1

    @cached_property
    def e2(self) -> MSeries:
        b1, g1 = self.b1, self.g1
        g1_shift = _at(g1, "X1", "Y1+Y2")
        return (
            self.b2
            - _at(b1, "X1-X2", "Y2") * g1_shift
            - g1_shift * HALF
            + _at(b1, "X2", "Y2") * g1
            + _at(b1, "X1-X2", "Y1") * _at(g1, "X2", "Y1+Y2")
            + self.g2
        ).clamp(self.D)

    @cached_property
    def pe(self) -> MSeries:
        return _product_split(self.e1).clamp(self.D)

    def e1_coeff(self, k: int, d: int) -> QSeries:
        return ms_coefficient(self.e1, k, 1, d, 0)

    def e2_coeff(self, k1: int, k2: int, d1: int, d2: int) -> QSeries:
        return ms_coefficient(self.e2, k1, k2, d1, d2)


def e_series(D: int = 8, N: int = 40) -> RealizationTable:
    return RealizationTable(D, N)


def verify_lemma_algstruct(D: int = 6, N: int = 30) -> list[SeriesReport]:
    """Stuffle, partition and shuffle relations of the bracket generating series."""
    g1_big, _ = g_generating_series(D + 1, N)
    _, g2 = g_generating_series(D, N)
    b1 = b1_series(D + 1)
    prod = _product_split(g1_big).clamp(D)

    g_a, g_b = _at(g1_big, "X1", "Y1+Y2"), _at(g1_big, "X2", "Y1+Y2")
    b_diff = _at(b1, "X2-X1", "Y1+Y2") - _at(b1, "X1-X2", "Y1+Y2")
    stuffle = (
        g2 + g2.swap() + (g_a - g_b).divided_difference("X") + b_diff * (g_a - g_b) - (g_a + g_b) * HALF
    )

    h_a, h_b = _at(g1_big, "X1+X2", "Y1"), _at(g1_big, "X1+X2", "Y2")
    c_diff = _at(b1, "Y2-Y1", "X1+X2") - _at(b1, "Y1-Y2", "X1+X2")
    shuffle = (
        _pair(g2, "X1+X2", "Y2", "X1", "Y1-Y2")
        + _pair(g2, "X1+X2", "Y1", "X2", "Y2-Y1")
        + (h_a - h_b).divided_difference("Y")
        + c_diff * (h_a - h_b)
        - (h_a + h_b) * HALF
    )

    g1 = g1_big.clamp(D)
    return [
        _compare("g-series stuffle", prod, stuffle, N),
        _compare("g-series partition depth one", g1, _at(g1, "Y1", "X1"), N),
        _compare("g-series partition depth two", g2, _pair(g2, "Y1+Y2", "X2", "Y1", "X1-X2"), N),
        _compare("g-series shuffle", prod, shuffle, N),
    ]


def verify_eisenstein(D: int = 8, N: int = 30, table: RealizationTable | None = None) -> list[SeriesReport]:
    """Both double-shuffle equalities for the Eisenstein family."""
    t = table or RealizationTable(D, N)
    e1, e2, pe = t.e1, t.e2, t.pe
    line1 = e2 + e2.swap() + r_stuffle(e1)
    line2 = _pair(e2, "X1+X2", "Y1", "X2", "Y2-Y1") + _pair(e2, "X1+X2", "Y2", "X1", "Y1-Y2") + r_shuffle(e1)
    return [
        _compare("eisenstein stuffle", pe, line1, t.N),
        _compare("eisenstein shuffle", pe, line2, t.N),
    ]


def verify_realization_images(table: RealizationTable, kmax: int, dmax: int | None = None) -> list[SeriesReport]:
    """Depth-one images are derivatives of normalized Eisenstein series.

    Checks ``e1(k, d) = (k-d-1)!/(k-1)! (q d/dq)^d Gtilde_{k-d}`` for
    ``k > d >= 0`` and ``P(k1, k2; 0, 0) -> Gtilde_k1 Gtilde_k2``.
    """
    if dmax is None:
        dmax = kmax - 1
    need = kmax - 1 + min(dmax, kmax - 1)
    if need > table.D + 1:
        raise ValueError(f"kmax={kmax}, dmax={dmax} need degree {need}, table has D={table.D}")
    N = table.N
    gt = {k: eisenstein_gtilde(k, N) for k in range(1, kmax + 1)}
    reports = []
    for k in range(1, kmax + 1):
        for d in range(min(k - 1, dmax) + 1):
            expect = gt[k - d]
            for _ in range(d):
                expect = qs_qderiv(expect)
            expect = expect * Fraction(factorial(k - d - 1), factorial(k - 1))
            got = table.e1_coeff(k, d)
            n = got.first_difference(expect)
            label = f"G({k};{d})"
            if n is None:
                reports.append(SeriesReport(label, True, table.D + 1, N))
            else:
                reports.append(SeriesReport(label, False, table.D + 1, N, (k - 1, 0, d, 0), n))
    for k1 in range(1, kmax):
        for k2 in range(1, min(kmax - k1, table.D + 2 - k1) + 1):
            got = realize(FormalVec.of(_sym("P", k1, k2, 0, 0)), table)
            n = got.first_difference(gt[k1] * gt[k2])
            label = f"P({k1},{k2};0,0)"
            reports.append(SeriesReport(label, n is None, table.D, N, None if n is None else (k1 - 1, k2 - 1, 0, 0), n))
    return reports


def _sym(kind, *params):
    from .formal_space import FormalSymbol

    return FormalSymbol(kind, tuple(params))


def realize(v: FormalVec, table: RealizationTable) -> QSeries:
    """Image of a formal vector under the Eisenstein realization."""
    out = QSeries.zero(table.N)
    for s, c in v.items():
        p = s.params
        if s.kind == "G1":
            img = table.e1_coeff(p[0], p[1])
        elif s.kind == "G2":
            img = table.e2_coeff(*p)
        elif s.kind == "P":
            img = table.e1_coeff(p[0], p[2]) * table.e1_coeff(p[1], p[3])
        else:
            raise ValueError(f"{s} is not a double Eisenstein symbol")
        out = out + img * c
    return out


def realize_bernoulli(v: FormalVec, D: int | None = None) -> Fraction:
    """Image of a formal vector under the rational (Bernoulli) realization."""
    if D is None:
        D = max(v.weight or 2, 2)
    b1 = b1_series(D + 1)
    b2 = None
    total = Fraction(0)
    for s, c in v.items():
        p = s.params
        if s.kind == "G1":
            img = ms_coefficient(b1, p[0], 1, p[1], 0)
        elif s.kind == "G2":
            if b2 is None:
                b2 = b2_series(D)
            img = ms_coefficient(b2, *p)
        elif s.kind == "P":
            img = ms_coefficient(b1, p[0], 1, p[2], 0) * ms_coefficient(b1, p[1], 1, p[3], 0)
        else:
            raise ValueError(f"{s} is not a double Eisenstein symbol")
        total += img * c
    return total
