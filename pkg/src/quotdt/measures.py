"""Measures on rank-0 virtual characters.

* :func:`bracket` sends ``t^mu`` to ``t^(mu/2) - t^(-mu/2)`` multiplicatively.
* :func:`euler` sends a weight to its linear form in ``s, v``.
* :func:`elliptic` refines the bracket by theta-function factors in ``p``.
* :func:`bracket_bseries` interpolates: ``t_i^(1/2) = exp(b s_i / 2)``.

Points assign values to the half-variables ``t_i^(1/2)`` and ``w_j^(1/2)``
directly, so no square roots are ever taken.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Cyclotomic, TruncatedSeries, series_exp, series_inv, to_fraction
from .characters import Monomial, VirtualCharacter
from .errors import (
    ConstantTerm,
    HalfExponent,
    MalformedCharacter,
    MalformedInput,
    NonGenericPoint,
    ResamplingExhausted,
    ZeroWeightValue,
)

__all__ = [
    "EvalPoint",
    "LinearPoint",
    "bracket",
    "euler",
    "elliptic",
    "bracket_bseries",
    "random_rational",
    "random_eval_point",
    "random_linear_point",
    "sample_until",
    "MAX_RETRIES",
]

MAX_RETRIES = 50
_RANGE = (2, 97)


def _scalar_to_json(x):
    if isinstance(x, Cyclotomic):
        return {"m": x.m, "coeffs": [str(c) for c in x.coeffs]}
    return str(x)


def _scalar_from_json(obj):
    if isinstance(obj, dict):
        try:
            return Cyclotomic(int(obj["m"]), [to_fraction(c) for c in obj["coeffs"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad cyclotomic scalar {obj!r}") from exc
    try:
        return to_fraction(obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational scalar {obj!r}") from exc


@dataclass(frozen=True)
class EvalPoint:
    """Values of ``t1^(1/2), t2^(1/2), t3^(1/2)`` and ``w_1^(1/2) .. w_r^(1/2)``."""

    thalf: tuple
    whalf: tuple = ()

    def __post_init__(self):
        thalf = tuple(self.thalf)
        whalf = tuple(self.whalf)
        if len(thalf) != 3:
            raise MalformedInput("an evaluation point needs three t half-values")
        thalf = tuple(x if isinstance(x, Cyclotomic) else to_fraction(x) for x in thalf)
        whalf = tuple(x if isinstance(x, Cyclotomic) else to_fraction(x) for x in whalf)
        for x in thalf + whalf:
            if not x:
                raise MalformedInput("evaluation values must be nonzero")
        object.__setattr__(self, "thalf", thalf)
        object.__setattr__(self, "whalf", whalf)

    @property
    def r(self) -> int:
        return len(self.whalf)

    @property
    def values(self) -> tuple:
        return self.thalf + self.whalf

    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.values)

    def adams(self, n: int) -> "EvalPoint":
        """Every half-value raised to the n-th power."""
        return EvalPoint(tuple(x ** n for x in self.thalf), tuple(x ** n for x in self.whalf))

    def with_whalf(self, whalf) -> "EvalPoint":
        return EvalPoint(self.thalf, tuple(whalf))

    def cy_half(self):
        """Value of ``(t1 t2 t3)^(1/2)``."""
        a, b, c = self.thalf
        return a * b * c

    def monomial_value(self, m: Monomial):
        """Value of the monomial itself: ``prod half_value ** doubled_exponent``."""
        return _power_product(self.values, m.texp + _pad(m.wexp, self.r))

    def to_json(self) -> dict:
        return {"thalf": [_scalar_to_json(x) for x in self.thalf], "whalf": [_scalar_to_json(x) for x in self.whalf]}

    @classmethod
    def from_json(cls, obj) -> "EvalPoint":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "thalf" not in obj:
            raise MalformedInput("an evaluation point needs a 'thalf' list")
        m = obj.get("m")
        conv = _scalar_from_json
        thalf = [conv(x) for x in obj["thalf"]]
        whalf = [conv(x) for x in obj.get("whalf", [])]
        if m is not None:
            m = int(m)
            thalf = [x if isinstance(x, Cyclotomic) else Cyclotomic(m, [x]) for x in thalf]
            whalf = [x if isinstance(x, Cyclotomic) else Cyclotomic(m, [x]) for x in whalf]
        return cls(tuple(thalf), tuple(whalf))


@dataclass(frozen=True)
class LinearPoint:
    """Values of ``s_i = c_1(t_i)`` and ``v_j = c_1(w_j)``."""

    s: tuple
    v: tuple = ()

    def __post_init__(self):
        s = tuple(to_fraction(x) for x in self.s)
        v = tuple(to_fraction(x) for x in self.v)
        if len(s) != 3:
            raise MalformedInput("a linear point needs three s-values")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "v", v)

    @property
    def r(self) -> int:
        return len(self.v)

    def linear_form(self, m: Monomial) -> Fraction:
        """``(a s1 + b s2 + c s3 + sum d_j v_j)`` for doubled exponents ``2a, 2b, ...``."""
        total = Fraction(0)
        for d, x in zip(m.texp + _pad(m.wexp, self.r), self.s + self.v):
            if d:
                total += d * x
        return total / 2

    def to_json(self) -> dict:
        return {"s": [str(x) for x in self.s], "v": [str(x) for x in self.v]}

    @classmethod
    def from_json(cls, obj) -> "LinearPoint":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "s" not in obj:
            raise MalformedInput("a linear point needs an 's' list")
        return cls(tuple(obj["s"]), tuple(obj.get("v", [])))


def _pad(wexp, r):
    if len(wexp) == r:
        return wexp
    if not any(wexp):
        return (0,) * r
    raise MalformedCharacter(f"character has {len(wexp)} framing slots but the point has {r}")


def _power_product(values, exps):
    out = None
    for x, e in zip(values, exps):
        if e:
            f = x ** e
            out = f if out is None else out * f
    if out is None:
        return Fraction(1) if all(isinstance(x, Fraction) for x in values) else values[0] ** 0
    return out


def _check_rank0(V: VirtualCharacter):
    if V.rank != 0:
        raise MalformedCharacter(f"measure needs a rank-0 character, got rank {V.rank}")
    if V.constant_term():
        raise ConstantTerm("character has a fixed (constant) part")


def _half_exps(m: Monomial, r: int):
    """Doubled exponents halved: the exponents of ``t^(mu/2)`` in half-variables."""
    exps = m.texp + _pad(m.wexp, r)
    if any(e % 2 for e in exps):
        raise HalfExponent(f"weight {m} has half-integer exponents; its bracket would need a fourth root")
    return tuple(e // 2 for e in exps)


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def bracket(V: VirtualCharacter, pt: EvalPoint):
    """``prod [t^mu]^mult`` with ``[x] = x^(1/2) - x^(-1/2)``, evaluated exactly at ``pt``."""
    _check_rank0(V)
    if not V:
        return Fraction(1) if pt.is_rational() else pt.thalf[0] ** 0
    if pt.is_rational():
        return _bracket_rational(V, pt)
    return _bracket_generic(V, pt)


def _bracket_rational(V, pt):
    nums = [x.numerator for x in pt.values]
    dens = [x.denominator for x in pt.values]
    r = pt.r
    N, D = 1, 1
    for m, c in V.terms.items():
        he = _half_exps(m, r)
        a, b = 1, 1
        for e, n, d in zip(he, nums, dens):
            if e > 0:
                a *= n ** e
                b *= d ** e
            elif e < 0:
                a *= d ** -e
                b *= n ** -e
        # x = a/b, x - 1/x = (a^2 - b^2) / (a b)
        top = a * a - b * b
        bot = a * b
        if c > 0:
            N *= top ** c
            D *= bot ** c
        else:
            if top == 0:
                raise NonGenericPoint(f"weight {m} has vanishing bracket in a denominator")
            N *= bot ** -c
            D *= top ** -c
    if D < 0:
        N, D = -N, -D
    return Fraction(N, D)


def _bracket_generic(V, pt):
    r = pt.r
    vals = pt.values
    inv = tuple(x.inverse() if hasattr(x, "inverse") else 1 / x for x in vals)
    num = None
    den = None
    for m, c in V.terms.items():
        he = _half_exps(m, r)
        x = _power_product(vals, he)
        xi = _power_product(inv, he)
        br = x - xi
        if c > 0:
            f = br ** c
            num = f if num is None else num * f
        else:
            if not br:
                raise NonGenericPoint(f"weight {m} has vanishing bracket in a denominator")
            f = br ** -c
            den = f if den is None else den * f
    one = vals[0] ** 0
    num = one if num is None else num
    if den is None:
        return num
    if not num:
        return num
    return num / den


# ---------------------------------------------------------------------------
# equivariant Euler class
# ---------------------------------------------------------------------------

def euler(V: VirtualCharacter, pt: LinearPoint, direction: LinearPoint | None = None) -> Fraction:
    """``prod l(mu)^mult`` where ``l`` is the linear form of the weight at ``pt``.

    With ``direction`` given, weights vanishing at ``pt`` are handled by the
    limit along ``pt + eps * direction``: each such factor contributes its
    derivative, and the total order of vanishing must be zero (a positive
    order gives 0, a negative one is a pole).
    """
    _check_rank0(V)
    N, D = Fraction(1), Fraction(1)
    order = 0
    for m, c in V.terms.items():
        if not m.is_integral():
            raise HalfExponent(f"weight {m} has half-integer exponents")
        ell = pt.linear_form(m)
        if ell == 0:
            if direction is None:
                raise ZeroWeightValue(f"weight {m} evaluates to zero at {pt.to_json()}")
            ell = direction.linear_form(m)
            if ell == 0:
                raise ZeroWeightValue(f"weight {m} vanishes along the direction {direction.to_json()}")
            order += c
        if c > 0:
            N *= ell ** c
        else:
            D *= ell ** -c
    if order > 0:
        return Fraction(0)
    if order < 0:
        raise ZeroWeightValue(f"pole of order {-order} at {pt.to_json()}")
    return N / D


# ---------------------------------------------------------------------------
# elliptic measure
# ---------------------------------------------------------------------------

def elliptic(V: VirtualCharacter, pt: EvalPoint, p_order: int) -> TruncatedSeries:
    """``prod theta_hat(p; t^mu)^mult`` as a p-series to order ``p_order``.

    ``theta_hat(p; y) = (y^(1/2) - y^(-1/2)) prod_{n>=1} (1 - y p^n)(1 - y^-1 p^n)``.
    The p-part is built from its logarithm,
    ``-sum_N p^N sum_{j | N} (1/j) sum_mu mult (y^j + y^-j)``, and one exponential.
    """
    if p_order < 0:
        raise ValueError("p_order must be non-negative")
    _check_rank0(V)
    lead = bracket(V, pt)
    if not lead or p_order == 0:
        return TruncatedSeries.constant(lead, p_order, "p")
    zero = lead - lead
    ys = []
    for m, c in V.terms.items():
        y = pt.monomial_value(m)
        yinv = pt.monomial_value(m.inverse())
        ys.append((c, y, yinv))
    power_sums = [None]
    for j in range(1, p_order + 1):
        acc = zero
        for c, y, yinv in ys:
            acc = acc + c * (y ** j + yinv ** j)
        power_sums.append(acc)
    log_coeffs = [zero]
    for N in range(1, p_order + 1):
        acc = zero
        for j in range(1, N + 1):
            if N % j == 0:
                acc = acc + power_sums[j] / j
        log_coeffs.append(-acc)
    return series_exp(TruncatedSeries(log_coeffs, "p")) * lead


# ---------------------------------------------------------------------------
# b-series interpolation
# ---------------------------------------------------------------------------

def _bracket_over_b(ell: Fraction, b_order: int) -> TruncatedSeries:
    # (exp(b ell/2) - exp(-b ell/2)) / b, built literally from two exponentials
    B = b_order + 1
    half = ell / 2
    up = series_exp(TruncatedSeries([Fraction(0), half] + [Fraction(0)] * (B - 1), "b"))
    down = series_exp(TruncatedSeries([Fraction(0), -half] + [Fraction(0)] * (B - 1), "b"))
    diff = up - down
    return TruncatedSeries(diff.coeffs[1:], "b")


def bracket_bseries(V: VirtualCharacter, pt: LinearPoint, b_order: int) -> TruncatedSeries:
    """Bracket of ``V`` at ``t_i^(1/2) = exp(b s_i/2), w_j^(1/2) = exp(b v_j/2)``.

    Each factor ``[x]`` has zero constant term; since ``V`` has rank 0 the
    powers of ``b`` cancel, so every factor is divided by ``b`` first.
    """
    if b_order < 0:
        raise ValueError("b_order must be non-negative")
    _check_rank0(V)
    num = TruncatedSeries.constant(Fraction(1), b_order, "b")
    den = TruncatedSeries.constant(Fraction(1), b_order, "b")
    for m, c in V.terms.items():
        ell = pt.linear_form(m)
        f = _bracket_over_b(ell, b_order)
        if c > 0:
            num = num * f ** c
        else:
            if ell == 0:
                raise ZeroWeightValue(f"weight {m} evaluates to zero at {pt.to_json()}")
            den = den * f ** -c
    return num * series_inv(den)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random) -> Fraction:
    """A signed rational with numerator and denominator in ``[2, 97]``."""
    lo, hi = _RANGE
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(lo, hi))
        if x != 1:
            return x if rng.random() < 0.5 else -x


def random_eval_point(r: int, rng: random.Random) -> EvalPoint:
    return EvalPoint(tuple(random_rational(rng) for _ in range(3)), tuple(random_rational(rng) for _ in range(r)))


def random_linear_point(r: int, rng: random.Random) -> LinearPoint:
    return LinearPoint(tuple(random_rational(rng) for _ in range(3)), tuple(random_rational(rng) for _ in range(r)))


def sample_until(make, accept, retries: int = MAX_RETRIES):
    """Draw ``make()`` until ``accept(x)`` succeeds without a NonGenericPoint.

    ``accept`` may return a value; the pair ``(point, value)`` is returned.
    """
    last = None
    for _ in range(retries):
        x = make()
        try:
            return x, accept(x)
        except NonGenericPoint as exc:
            last = exc
    raise ResamplingExhausted(f"no generic point after {retries} draws (last failure: {last})")
