"""Floating-point checks of the limits (1-q)^w g(k_1,...,k_r) -> zeta(k_1,...,k_r).

Everything here is double precision. Exact identities live in the other
modules; this one only gives numerical evidence for the analytic statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .brackets import BiIndex
from .exact_core import eulerian_poly

__all__ = ["mzv_oracle", "g_float", "richardson", "limit_check", "LimitReport"]


def _check_admissible(ks) -> tuple[int, ...]:
    ks = tuple(int(k) for k in ks)
    if not ks or any(k < 1 for k in ks):
        raise ValueError(f"bad index {ks}")
    if ks[0] < 2:
        raise ValueError(f"zeta{ks} diverges (k1 must be >= 2)")
    return ks


def mzv_oracle(ks, cutoff: int = 10**6) -> float:
    """``zeta(k1,...,kr) = sum_{m1>...>mr>0} m1^-k1 ... mr^-kr``.

    Inner sums are carried exactly up to ``cutoff``; the outer tail is
    replaced by ``S * (M^(1-k1)/(k1-1) - M^-k1/2)`` where ``S`` is the inner
    sum at ``M``. The neglected part is ``O(M^(1-k1))`` (times a log for
    depth > 1).
    """
    ks = _check_admissible(ks)
    M = int(cutoff)
    m = np.arange(1, M + 1, dtype=np.float64)
    inner = np.ones(M)  # value of the inner nested sum over indices < m
    s_at_M = 1.0
    for k in reversed(ks[1:]):
        running = np.cumsum(inner * m ** (-k))
        s_at_M = float(running[-1])
        # sum over strictly smaller m: shift the cumulative sum by one
        inner = np.concatenate(([0.0], running[:-1]))
    k1 = ks[0]
    head = float(np.sum(inner * m ** (-k1)))
    tail = s_at_M * (M ** (1.0 - k1) / (k1 - 1) - 0.5 * M ** (-float(k1)))
    return head + tail


def _depth_one_terms(k: int, t: float, M: int) -> np.ndarray:
    """``P_k(x)/(1-x)^k`` at ``x = exp(-m t)`` for ``m = 1..M``."""
    coeffs = [float(c) for c in eulerian_poly(k).coeffs]
    m = np.arange(1, M + 1, dtype=np.float64)
    x = np.exp(-m * t)
    one_minus = -np.expm1(-m * t)
    num = np.polynomial.polynomial.polyval(x, coeffs)
    return num / one_minus**k


def g_float(idx, q: float, cutoff: int | None = None) -> float:
    """Float value of ``g(k1,...,kr)`` (all ``d = 0``) at real ``q``.

    Uses ``g = sum_{m1>...>mr>0} prod_j P_kj(q^mj) / (1 - q^mj)^kj``. The
    default cutoff keeps ``q^M`` below ``e^-50``.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0,1), got {q}")
    if isinstance(idx, BiIndex):
        if any(idx.d):
            raise ValueError("only d = 0 indices have a float evaluator")
        ks = idx.k
    else:
        ks = tuple(idx)
    t = -math.log(q)
    M = int(cutoff) if cutoff is not None else int(math.ceil(50.0 / t)) + len(ks)
    inner = np.ones(M)
    for k in reversed(ks[1:]):
        term = inner * _depth_one_terms(k, t, M)
        inner = np.concatenate(([0.0], np.cumsum(term)[:-1]))
    return float(np.sum(inner * _depth_one_terms(ks[0], t, M)))


def richardson(samples, ratio: float = 2.0, order: int = 2) -> float:
    """Extrapolate samples taken at step sizes ``h, h/ratio, h/ratio^2, ...`` to ``h = 0``."""
    table = [float(s) for s in samples]
    if len(table) <= order:
        raise ValueError("need more samples than the extrapolation order")
    for p in range(1, order + 1):
        f = ratio**p
        table = [(f * b - a) / (f - 1) for a, b in zip(table, table[1:])]
    return table[-1]


@dataclass
class LimitReport:
    index: BiIndex
    epsilons: list
    samples: list
    extrapolated: float
    reference: float
    abs_error: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.abs_error <= self.tolerance)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "index": {"k": list(self.index.k), "d": list(self.index.d)},
            "epsilons": self.epsilons,
            "samples": self.samples,
            "extrapolated": self.extrapolated,
            "reference": self.reference,
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def limit_check(idx, tolerance: float | None = None, jmin: int = 3, jmax: int | None = None) -> LimitReport:
    """Sample ``(1-q)^w g`` on ``q_j = 1 - 2^-j`` and compare the extrapolated limit with zeta.

    Depth-one indices use ``j = 3..10`` and tolerance ``1e-3``; deeper ones a
    shallower ladder ``j = 3..8`` and ``1e-2``.
    """
    if not isinstance(idx, BiIndex):
        idx = BiIndex.of(tuple(idx))
    if any(idx.d):
        raise ValueError("limits are only checked for d = 0 indices")
    ks = _check_admissible(idx.k)
    depth = len(ks)
    if jmax is None:
        jmax = 10 if depth == 1 else 8
    if tolerance is None:
        tolerance = 1e-3 if depth == 1 else 1e-2
    w = sum(ks)
    eps = [2.0 ** (-j) for j in range(jmin, jmax + 1)]
    samples = [e**w * g_float(ks, 1.0 - e) for e in eps]
    if not all(math.isfinite(s) for s in samples):
        raise FloatingPointError(f"non-finite sample for {idx}")
    extrapolated = richardson(samples)
    reference = mzv_oracle(ks)
    return LimitReport(idx, eps, samples, extrapolated, reference, abs(extrapolated - reference), tolerance)
