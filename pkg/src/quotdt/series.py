"""Plethystic exponential and closed-form generating functions."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .algebra import LaurentHalf, TruncatedSeries, series_exp, series_inv, to_fraction
from .errors import NonConvergentFamily, NonGenericPoint
from .measures import EvalPoint, LinearPoint

__all__ = [
    "AdamsFamily",
    "pleth_exp",
    "macmahon",
    "macmahon_log",
    "phi",
    "f_r_series",
    "f_r_family",
    "dtk_closed",
    "dtcoh_closed",
    "dtell_closed",
    "dtmot_closed",
    "laurent_kernel",
    "MAX_MACMAHON_ORDER",
]

MAX_MACMAHON_ORDER = 32


class AdamsFamily:
    """Level ``n`` gives the n-th Adams twist of a fixed expression as a q-series.

    ``level(n, order)`` must return a series of precision ``order`` whose
    coefficients below ``q^n`` vanish.
    """

    def __init__(self, level: Callable[[int, int], TruncatedSeries], name: str = "F"):
        self._level = level
        self.name = name

    def level(self, n: int, order: int) -> TruncatedSeries:
        if n < 1:
            raise ValueError("Adams levels start at 1")
        return self._level(n, order)

    __call__ = level

    @classmethod
    def from_series(cls, f: TruncatedSeries, name: str = "F") -> "AdamsFamily":
        """Family of a series with constant coefficients: level n is ``f(q^n)``."""

        def level(n, order):
            if order > f.order * n + (n - 1):
                raise ValueError(f"series known only to order {f.order}")
            return f.truncate(min(f.order, order // n)).dilate(n, order)

        return cls(level, name)


def pleth_exp(F: AdamsFamily, order: int) -> TruncatedSeries:
    """``Exp(F) = exp(sum_{n>=1} F_n / n)`` truncated at ``q^order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    total = None
    for n in range(1, order + 1):
        s = F.level(n, order)
        if s.order < order:
            raise ValueError(f"level {n} returned precision {s.order} < {order}")
        s = s.truncate(order)
        for k in range(min(n, order + 1)):
            if s[k]:
                raise NonConvergentFamily(f"level {n} contributes at q^{k}, below its own level")
        term = s / n
        total = term if total is None else total + term
    if total is None:
        return TruncatedSeries([Fraction(1)], "q")
    return series_exp(total)


def macmahon_log(order: int) -> TruncatedSeries:
    """``log M(q) = sum_N q^N sum_{j | N} N / j^2``."""
    coeffs = [Fraction(0)]
    for N in range(1, order + 1):
        coeffs.append(sum((Fraction(N, j * j) for j in range(1, N + 1) if N % j == 0), Fraction(0)))
    return TruncatedSeries(coeffs, "q")


def macmahon(c, sign_rank: int, order: int) -> TruncatedSeries:
    """``M((-1)^sign_rank q)^c`` for rational ``c``."""
    if not 0 <= order <= MAX_MACMAHON_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_MACMAHON_ORDER}]")
    c = to_fraction(c)
    out = series_exp(macmahon_log(order) * c)
    return out.scale(Fraction(-1)) if sign_rank % 2 else out


def phi(s) -> Fraction:
    """``(s1+s2)(s1+s3)(s2+s3) / (s1 s2 s3)``."""
    s1, s2, s3 = (to_fraction(x) for x in s)
    den = s1 * s2 * s3
    if den == 0:
        raise NonGenericPoint("some s_i vanishes")
    return (s1 + s2) * (s1 + s3) * (s2 + s3) / den


def _br(x):
    inv = x.inverse() if hasattr(x, "inverse") else 1 / x
    return x - inv


def laurent_kernel(a, order: int) -> TruncatedSeries:
    """``1/([a q][a q^-1])`` expanded as ``-q / ((1 - a q)(1 - a^-1 q))``."""
    one = a ** 0
    zero = one - one
    ainv = a.inverse() if hasattr(a, "inverse") else 1 / a
    pad = [zero] * max(order - 2, 0)
    den = TruncatedSeries(([one, -(a + ainv), one] + pad)[: order + 1], "q")
    num = TruncatedSeries(([zero, -one] + [zero] * order)[: order + 1], "q")
    return num * series_inv(den)


def _b_factor(pt: EvalPoint):
    a, b, c = pt.thalf
    den = _br(a) * _br(b) * _br(c)
    if not den:
        raise NonGenericPoint("some [t_i] vanishes")
    return _br(a * b) * _br(a * c) * _br(b * c) / den


def f_r_series(r: int, pt: EvalPoint, order: int) -> TruncatedSeries:
    """``[t^r] / ([t][a q][a q^-1]) * B`` with ``t = t1 t2 t3``, ``a = t^(r/2)``."""
    c = pt.cy_half()
    a = c ** r
    br_c = _br(c)
    if not br_c:
        raise NonGenericPoint("[t1 t2 t3] vanishes")
    prefactor = _br(a) / br_c * _b_factor(pt)
    return laurent_kernel(a, order) * prefactor


def f_r_family(r: int, pt: EvalPoint) -> AdamsFamily:
    def level(n, order):
        return f_r_series(r, pt.adams(n), order // n).dilate(n, order)

    return AdamsFamily(level, f"F_{r}")


def dtk_closed(r: int, pt: EvalPoint, order: int) -> TruncatedSeries:
    """``Exp(F_r)`` with ``q -> (-1)^r q`` undone."""
    g = pleth_exp(f_r_family(r, pt), order)
    return g.scale(Fraction(-1)) if r % 2 else g


def dtcoh_closed(r: int, pt_s, order: int) -> TruncatedSeries:
    """``M((-1)^r q)^(-r phi(s))``."""
    s = pt_s.s if isinstance(pt_s, LinearPoint) else pt_s
    return macmahon(-r * phi(s), r, order)


def dtell_closed(r: int, k: int, order: int) -> TruncatedSeries:
    """``M((-1)^(kr) ((-1)^r q)^(r/g))^g`` with ``g = gcd(k, r)``."""
    g = math.gcd(k, r)
    d = r // g
    sign = (k * r + r * d) % 2
    base = macmahon(g, sign, order // d)
    return base.dilate(d, order)


def dtmot_closed(r: int, order: int) -> TruncatedSeries:
    """``prod_{m>=1} prod_{k=0}^{rm-1} (1 - L^(2+k-rm/2) q^m)^-1`` over Laurent polynomials in ``L^(1/2)``."""
    if r < 1:
        raise ValueError("rank must be positive")
    zero = LaurentHalf()
    one = LaurentHalf({0: 1})
    result = TruncatedSeries([one] + [zero] * order, "q")
    for m in range(1, order + 1):
        for k in range(r * m):
            doubled = 2 * (2 + k) - r * m
            # geometric series of L^(doubled/2) q^m
            coeffs = [zero] * (order + 1)
            for j in range(order // m + 1):
                coeffs[j * m] = LaurentHalf({doubled * j: 1})
            result = result * TruncatedSeries(coeffs, "q")
    return result
