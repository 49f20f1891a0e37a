"""Bi-indexed q-series ``g(k_1..k_r; d_1..d_r)`` and their product formulas.

The coefficient of ``q^N`` in ``g(k; d)`` is a sum over partitions of ``N``
with exactly ``r`` distinct part sizes ``m_1 > ... > m_r`` occurring with
multiplicities ``n_1, ..., n_r``::

    f(lambda) = prod_i m_i^d_i * n_i^(k_i - 1) / (k_i - 1)!

Everything here is exact. Products of depth-one series are expanded into
:class:`BracketCombo` objects (finite rational combinations of brackets) that
can be evaluated and compared against literal series products.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Mapping

from .exact_core import bernoulli, binomial, rat_to_str
from .qseries import QSeries

__all__ = [
    "BiIndex",
    "Partition",
    "BracketCombo",
    "IdentityReport",
    "eval_bracket",
    "eval_combo",
    "partitions",
    "conjugate",
    "bracket_via_conjugation",
    "lambda_coeff",
    "expand_stuffle",
    "expand_partition_relation",
    "expand_shuffle",
    "qderiv_bracket",
    "verify_bracket_identity",
]


@dataclass(frozen=True, order=True)
class BiIndex:
    k: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        k, d = tuple(self.k), tuple(self.d)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "d", d)
        if not k:
            raise ValueError("depth 0 bracket is not defined")
        if len(k) != len(d):
            raise ValueError(f"k and d must have the same length, got {k} and {d}")
        if any(x < 1 for x in k):
            raise ValueError(f"entries of k must be >= 1, got {k}")
        if any(x < 0 for x in d):
            raise ValueError(f"entries of d must be >= 0, got {d}")

    @classmethod
    def of(cls, k, d=None) -> "BiIndex":
        """Convenience constructor accepting ints or sequences; ``d`` defaults to zeros."""
        k = (k,) if isinstance(k, int) else tuple(k)
        if d is None:
            d = (0,) * len(k)
        d = (d,) if isinstance(d, int) else tuple(d)
        return cls(k, d)

    @property
    def weight(self) -> int:
        return sum(self.k) + sum(self.d)

    @property
    def depth(self) -> int:
        return len(self.k)

    def __str__(self):
        ks = ",".join(map(str, self.k))
        ds = ",".join(map(str, self.d))
        return f"g({ks};{ds})"


@dataclass(frozen=True)
class Partition:
    """Young diagram with distinct parts ``m`` (decreasing) and multiplicities ``n``."""

    m: tuple[int, ...]
    n: tuple[int, ...]

    def __post_init__(self):
        m, n = tuple(self.m), tuple(self.n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        if len(m) != len(n) or not m:
            raise ValueError("parts and multiplicities must be non-empty and of equal length")
        if any(a <= b for a, b in zip(m, m[1:])) or m[-1] <= 0:
            raise ValueError(f"parts must be strictly decreasing and positive, got {m}")
        if any(x <= 0 for x in n):
            raise ValueError(f"multiplicities must be positive, got {n}")

    @property
    def size(self) -> int:
        return sum(a * b for a, b in zip(self.m, self.n))

    @property
    def depth(self) -> int:
        return len(self.m)


def conjugate(lam: Partition) -> Partition:
    """Reflect the Young diagram along its diagonal."""
    r = lam.depth
    m, n = lam.m, lam.n
    parts = []
    acc = 0
    for x in n:
        acc += x
        parts.append(acc)
    parts.reverse()  # n_1+...+n_r, ..., n_1
    mults = [m[r - 1]] + [m[i - 1] - m[i] for i in range(r - 1, 0, -1)]
    # Partial sums of positive n_i are strictly decreasing once reversed, and
    # consecutive differences of strictly decreasing m_i are positive, so no
    # merging of equal parts can be needed.
    assert all(a > b for a, b in zip(parts, parts[1:])) and all(x > 0 for x in mults)
    return Partition(tuple(parts), tuple(mults))


def partitions(r: int, size: int) -> Iterator[Partition]:
    """All elements of ``Part_r(size)``, by brute-force enumeration."""

    def rec(remaining: int, upper: int, depth_left: int, ms: tuple, ns: tuple):
        if depth_left == 0:
            if remaining == 0:
                yield Partition(ms, ns)
            return
        # the remaining depth_left - 1 parts need at least 1 + 2 + ... boxes
        min_rest = (depth_left - 1) * depth_left // 2
        for mj in range(depth_left, upper):
            if mj + min_rest > remaining:
                break
            for nj in range(1, (remaining - min_rest) // mj + 1):
                yield from rec(remaining - mj * nj, mj, depth_left - 1, ms + (mj,), ns + (nj,))

    yield from rec(size, size + 1, r, (), ())


# -- evaluation ------------------------------------------------------------

_eval_cache: dict[BiIndex, QSeries] = {}
_eval_lock = threading.Lock()


def _eval_int(k: tuple[int, ...], d: tuple[int, ...], order: int) -> list[int]:
    """Coefficients of ``prod (k_i-1)! * g(k; d)`` up to ``q^order``.

    Walk the part size ``m`` upward once. For the innermost slot ``r`` the
    contribution of part ``m`` is ``sum_n m^d_r n^(k_r-1) q^(mn)``; slot ``j``
    multiplies its own contribution by the running total of slot ``j+1`` over
    all strictly smaller parts.
    """
    r = len(k)
    below = [[0] * (order + 1) for _ in range(r + 1)]
    below[r][0] = 1  # empty tail
    for m in range(1, order + 1):
        fresh = []
        for j in range(r):
            tail = below[j + 1]
            lo = next((i for i, x in enumerate(tail) if x), None)
            out = None
            if lo is not None and lo + m <= order:
                out = [0] * (order + 1)
                mp = m ** d[j]
                kk = k[j] - 1
                for nj in range(1, (order - lo) // m + 1):
                    shift = m * nj
                    c = mp * nj**kk
                    for i in range(lo, order - shift + 1):
                        t = tail[i]
                        if t:
                            out[i + shift] += c * t
            fresh.append(out)
        for j, out in enumerate(fresh):
            if out is not None:
                acc = below[j]
                for i, x in enumerate(out):
                    if x:
                        acc[i] += x
    return below[0]


def eval_bracket(idx: BiIndex, order: int) -> QSeries:
    """q-expansion of ``g(idx)`` modulo ``q^(order+1)``."""
    if not isinstance(idx, BiIndex):
        idx = BiIndex(*idx)
    if order < 0:
        raise ValueError("order must be >= 0")
    with _eval_lock:
        hit = _eval_cache.get(idx)
    if hit is not None and hit.order >= order:
        return hit.truncate(order)
    ints = _eval_int(idx.k, idx.d, order)
    den = prod(factorial(x - 1) for x in idx.k)
    series = QSeries._raw(tuple(Fraction(x, den) for x in ints), order)
    with _eval_lock:
        old = _eval_cache.get(idx)
        if old is None or old.order < order:
            _eval_cache[idx] = series
    return series


def _weight_fn(idx: BiIndex, lam: Partition) -> Fraction:
    num = 1
    for mi, ni, ki, di in zip(lam.m, lam.n, idx.k, idx.d):
        num *= mi**di * ni ** (ki - 1)
    return Fraction(num, prod(factorial(x - 1) for x in idx.k))


def bracket_via_conjugation(idx: BiIndex, order: int) -> QSeries:
    """Same series as :func:`eval_bracket`, summing ``f(rho(lambda))`` over ``Part_r(N)``.

    Conjugation is a bijection on ``Part_r(N)``, so this reindexes the
    defining sum; it is used as an independent brute-force check.
    """
    if not isinstance(idx, BiIndex):
        idx = BiIndex(*idx)
    coeffs = [Fraction(0)] * (order + 1)
    for size in range(1, order + 1):
        coeffs[size] = sum((_weight_fn(idx, conjugate(lam)) for lam in partitions(idx.depth, size)), Fraction(0))
    return QSeries(coeffs, order)


# -- linear combinations ---------------------------------------------------


class BracketCombo:
    """Finite rational linear combination of brackets; zero terms are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BiIndex, Fraction] | Iterable[tuple[BiIndex, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BiIndex, Fraction] = {}
        for idx, c in items:
            if not isinstance(idx, BiIndex):
                idx = BiIndex(*idx)
            acc[idx] = acc.get(idx, Fraction(0)) + Fraction(c)
        self._terms = {i: acc[i] for i in sorted(acc) if acc[i] != 0}

    @property
    def terms(self) -> dict[BiIndex, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, idx):
        if not isinstance(idx, BiIndex):
            idx = BiIndex(*idx)
        return self._terms.get(idx, Fraction(0))

    def __add__(self, other: "BracketCombo") -> "BracketCombo":
        return BracketCombo(list(self.items()) + list(other.items()))

    def __sub__(self, other: "BracketCombo") -> "BracketCombo":
        return self + other * -1

    def __mul__(self, c) -> "BracketCombo":
        c = Fraction(c)
        return BracketCombo((i, v * c) for i, v in self.items())

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, BracketCombo):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == BracketCombo(other)
        return NotImplemented

    __hash__ = None

    def weights(self) -> set[int]:
        return {i.weight for i in self._terms}

    def evaluate(self, order: int) -> QSeries:
        return eval_combo(self, order)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"k": list(i.k), "d": list(i.d), "coeff": rat_to_str(c)} for i, c in self.items()
            ]
        }

    def __repr__(self):
        inner = ", ".join(f"{i}: {c}" for i, c in self.items())
        return f"BracketCombo({{{inner}}})"


def eval_combo(combo: BracketCombo, order: int) -> QSeries:
    total = QSeries.zero(order)
    for idx, c in combo.items():
        total = total + eval_bracket(idx, order) * c
    return total


# -- product formulas --------------------------------------------------------


def lambda_coeff(k1: int, k2: int, j: int) -> Fraction:
    """Lower-weight coefficient of ``g(j; .)`` in the depth-one stuffle product."""
    if not 1 <= j <= k1 + k2 - 1:
        raise ValueError(f"j must lie in 1..{k1 + k2 - 1}, got {j}")
    s = k1 + k2 - j
    b = (-1) ** (k1 - 1) * binomial(s - 1, k2 - j) + (-1) ** (k2 - 1) * binomial(s - 1, k1 - j)
    if not b:
        return Fraction(0)
    return b * bernoulli(s) / factorial(s)


def expand_stuffle(k1: int, d1: int, k2: int, d2: int) -> BracketCombo:
    """``g(k1;d1) g(k2;d2)`` as a combination of brackets (harmonic product)."""
    terms = [
        (BiIndex((k1, k2), (d1, d2)), 1),
        (BiIndex((k2, k1), (d2, d1)), 1),
        (BiIndex((k1 + k2,), (d1 + d2,)), 1),
    ]
    for j in range(1, k1 + k2):
        terms.append((BiIndex((j,), (d1 + d2,)), lambda_coeff(k1, k2, j)))
    return BracketCombo(terms)


def expand_partition_relation(idx: BiIndex) -> BracketCombo:
    """Rewrite ``g(idx)`` through Young-diagram conjugation (depth 1 or 2)."""
    if not isinstance(idx, BiIndex):
        idx = BiIndex(*idx)
    if idx.depth == 1:
        (k,), (d,) = idx.k, idx.d
        return BracketCombo({BiIndex((d + 1,), (k - 1,)): Fraction(factorial(d), factorial(k - 1))})
    if idx.depth == 2:
        (k1, k2), (d1, d2) = idx.k, idx.d
        terms = []
        base = Fraction(factorial(d1), factorial(k1 - 1))
        for a in range(d1 + 1):
            for b in range(k2):
                c = base * (-1) ** b * Fraction(factorial(d2 + a), factorial(a) * factorial(b) * factorial(k2 - 1 - b))
                terms.append((BiIndex((d2 + 1 + a, d1 + 1 - a), (k2 - 1 - b, k1 - 1 + b)), c))
        return BracketCombo(terms)
    raise ValueError(f"closed-form partition relation only for depth 1 and 2, got depth {idx.depth}")


def expand_shuffle(k1: int, d1: int, k2: int, d2: int) -> BracketCombo:
    """``g(k1;d1) g(k2;d2)`` expanded in the shuffle-like form."""
    K, D = k1 + k2, d1 + d2
    terms = []
    for l1 in range(1, K):
        l2 = K - l1
        for e1 in range(D + 1):
            e2 = D - e1
            c = binomial(l1 - 1, k1 - 1) * binomial(d1, e1) * (-1) ** (d1 - e1) + binomial(
                l1 - 1, k2 - 1
            ) * binomial(d2, e1) * (-1) ** (d2 - e1)
            if c:
                terms.append((BiIndex((l1, l2), (e1, e2)), c))
    bk = binomial(K - 2, k1 - 1)
    df = factorial(d1) * factorial(d2)
    terms.append((BiIndex((K - 1,), (D + 1,)), Fraction(df * bk, factorial(D + 1))))
    for j in range(1, D + 2):
        lam = lambda_coeff(d1 + 1, d2 + 1, j)
        if lam:
            terms.append((BiIndex((K - 1,), (j - 1,)), df * bk * lam / factorial(j - 1)))
    return BracketCombo(terms)


def qderiv_bracket(idx: BiIndex) -> BracketCombo:
    """``q d/dq g(idx)`` as a combination of brackets."""
    if not isinstance(idx, BiIndex):
        idx = BiIndex(*idx)
    terms = []
    for j, kj in enumerate(idx.k):
        k = list(idx.k)
        d = list(idx.d)
        k[j] += 1
        d[j] += 1
        terms.append((BiIndex(tuple(k), tuple(d)), kj))
    return BracketCombo(terms)


# -- verification --------------------------------------------------------------


@dataclass
class IdentityReport:
    holds: bool
    order: int
    first_discrepancy: int | None = None
    lhs_coeff: Fraction | None = None
    rhs_coeff: Fraction | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"label": self.label, "holds": self.holds, "order": self.order}
        if not self.holds:
            out["first_discrepancy"] = self.first_discrepancy
            out["lhs_coeff"] = rat_to_str(self.lhs_coeff)
            out["rhs_coeff"] = rat_to_str(self.rhs_coeff)
        out.update(self.extra)
        return out

    def __bool__(self):
        return self.holds


def _as_series(side, order: int) -> QSeries:
    if isinstance(side, QSeries):
        return side.truncate(order)
    if isinstance(side, BracketCombo):
        return eval_combo(side, order)
    if isinstance(side, BiIndex):
        return eval_bracket(side, order)
    # an iterable of indices is read as their product
    out = QSeries.constant(1, order)
    for idx in side:
        out = out * eval_bracket(idx, order)
    return out


def verify_bracket_identity(lhs, rhs, order: int, label: str = "") -> IdentityReport:
    """Compare both sides coefficientwise up to ``q^order``.

    Each side may be a :class:`BracketCombo`, a single :class:`BiIndex`, a
    :class:`QSeries`, or an iterable of indices (read as a product).
    """
    a = _as_series(lhs, order)
    b = _as_series(rhs, order)
    n = a.first_difference(b)
    if n is None:
        return IdentityReport(True, order, label=label)
    return IdentityReport(False, order, n, a[n], b[n], label=label)
