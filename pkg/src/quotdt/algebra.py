"""Exact scalar rings and truncated power series.

Everything here is exact: rationals are :class:`fractions.Fraction`,
elements of a cyclotomic field are polynomials in a primitive root of unity
reduced modulo the cyclotomic polynomial, and :class:`LaurentHalf` holds
Laurent polynomials in ``L**(1/2)``.  :class:`TruncatedSeries` works over any
of these rings (and over itself, which gives two-variable series).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

from .errors import NonUnitError

__all__ = [
    "Cyclotomic",
    "LaurentHalf",
    "TruncatedSeries",
    "cyclotomic_poly",
    "series_exp",
    "series_log",
    "series_inv",
    "series_pow_scalar",
    "to_fraction",
    "ring_inverse",
]

MAX_CYCLOTOMIC_ORDER = 120


def to_fraction(x):
    """Coerce ints, Fractions and fraction strings like ``"-3/7"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def ring_inverse(x):
    """Multiplicative inverse of a scalar from any supported ring."""
    inv = getattr(x, "inverse", None)
    if inv is not None:
        return inv()
    if x == 0:
        raise NonUnitError("zero is not invertible")
    return 1 / Fraction(x)


# ---------------------------------------------------------------------------
# polynomials over Q, stored low degree first
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = [Fraction(c) for c in a]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = Fraction(rem[-1]) / lead
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem = _trim(rem)
    return _trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """The m-th cyclotomic polynomial, coefficients low degree first.

    Computed as ``(x**m - 1) / prod(Phi_d for d | m, d < m)`` by exact
    division, for ``1 <= m <= 120``.
    """
    if not isinstance(m, int) or isinstance(m, bool) or not 1 <= m <= MAX_CYCLOTOMIC_ORDER:
        raise ValueError(f"cyclotomic order must be an integer in [1, {MAX_CYCLOTOMIC_ORDER}], got {m!r}")
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    den = [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, cyclotomic_poly(d))
    quot, rem = _poly_divmod(num, den)
    assert not rem, "x^m - 1 must be divisible by the lower cyclotomic factors"
    return tuple(Fraction(c) for c in quot)


@lru_cache(maxsize=None)
def _totient(m):
    return len(cyclotomic_poly(m)) - 1


def _reduce_mod_phi(coeffs, m):
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    # Phi_m is monic
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead == 0:
            continue
        shift = top - deg
        for i in range(deg + 1):
            if phi[i]:
                c[shift + i] -= lead * phi[i]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


def _poly_ext_inverse(a, modulus):
    """Inverse of ``a`` modulo ``modulus`` in Q[x] via the extended Euclidean algorithm."""
    r0, r1 = _trim(modulus), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1)
        n = max(len(s0), len(qs))
        s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
        s0, s1 = s1, _trim(s_new)
    if len(r0) != 1:
        raise NonUnitError("element is not invertible modulo the cyclotomic polynomial")
    c = Fraction(r0[0])
    return [Fraction(x) / c for x in s0]


class Cyclotomic:
    """An element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial.

    >>> z = Cyclotomic.zeta(4)
    >>> z * z == -1
    True
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=()):
        cyclotomic_poly(m)  # validates m
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", _reduce_mod_phi(coeffs, m))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "Cyclotomic":
        """``zeta_m ** power`` for any integer power."""
        power %= m
        return cls(m, [0] * power + [1])

    @classmethod
    def from_rational(cls, m: int, x) -> "Cyclotomic":
        return cls(m, [to_fraction(x)])

    # -- coercion ---------------------------------------------------------
    def embed(self, n: int) -> "Cyclotomic":
        """Image under Q(zeta_m) -> Q(zeta_n), zeta_m -> zeta_n**(n/m)."""
        if n == self.m:
            return self
        if n % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{n})")
        step = n // self.m
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return Cyclotomic(n, out)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m == self.m:
                return self, other
            n = self.m * other.m // math.gcd(self.m, other.m)
            return self.embed(n), other.embed(n)
        try:
            return self, Cyclotomic(self.m, [to_fraction(other)])
        except TypeError:
            return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Cyclotomic(self.m, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, _poly_mul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise NonUnitError("zero has no inverse in a cyclotomic field")
        return Cyclotomic(self.m, _poly_ext_inverse(self.coeffs, cyclotomic_poly(self.m)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.m, [x / other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = Cyclotomic(self.m, [1])
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.m, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"Cyclotomic({self.m}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.m}" if i == 1 else f"z{self.m}^{i}"
                terms.append(mono if c == 1 else f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Laurent polynomials in L^(1/2)
# ---------------------------------------------------------------------------

class LaurentHalf:
    """Laurent polynomial in one variable with exponents in (1/2)Z.

    Keys are doubled exponents: ``{3: 1}`` is ``L**(3/2)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            v = to_fraction(v)
            if v:
                clean[int(k)] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentHalf values are immutable")

    @classmethod
    def monomial(cls, doubled_exp: int, coeff=1) -> "LaurentHalf":
        return cls({doubled_exp: coeff})

    def _coerce(self, other):
        if isinstance(other, LaurentHalf):
            return other
        try:
            return LaurentHalf({0: to_fraction(other)})
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentHalf(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalf({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LaurentHalf(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentHalf({k: v / other for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> "LaurentHalf":
        """Only monomials are units in the Laurent ring."""
        if len(self.terms) != 1:
            raise NonUnitError(f"{self} is not a unit (only monomials are)")
        (k, v), = self.terms.items()
        return LaurentHalf({-k: 1 / v})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = LaurentHalf({0: 1})
        for _ in range(abs(n)):
            result = result * base
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"LaurentHalf({ {k: str(v) for k, v in sorted(self.terms.items())} })"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            if k == 0:
                parts.append(str(v))
                continue
            e = Fraction(k, 2)
            mono = "L" if e == 1 else f"L^{e}" if e.denominator == 1 and e > 0 else f"L^({e})"
            coef = "" if v == 1 else "-" if v == -1 else f"{v}*" if Fraction(v).denominator == 1 else f"({v})*"
            parts.append(coef + mono)
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

_VARS = ("q", "p", "b")


class TruncatedSeries:
    """Power series ``c_0 + c_1 x + ... + c_N x^N`` known modulo ``x^(N+1)``.

    Coefficients may come from any ring supporting ``+ - *`` and division by
    integers: Fraction, :class:`Cyclotomic`, :class:`LaurentHalf`, or another
    :class:`TruncatedSeries` in a different variable.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs, var: str = "q"):
        coeffs = tuple(Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c for c in coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        if var not in _VARS:
            raise ValueError(f"series variable must be one of {_VARS}, got {var!r}")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries values are immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, order: int, var: str = "q") -> "TruncatedSeries":
        zero = c - c
        return cls([c] + [zero] * order, var)

    @classmethod
    def zero(cls, order: int, var: str = "q", like=Fraction(0)) -> "TruncatedSeries":
        z = like - like
        return cls([z] * (order + 1), var)

    @classmethod
    def monomial(cls, degree: int, order: int, var: str = "q", coeff=Fraction(1)) -> "TruncatedSeries":
        z = coeff - coeff
        out = [z] * (order + 1)
        if degree <= order:
            out[degree] = coeff
        return cls(out, var)

    # -- basic accessors --------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the precision of a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.var)

    def _zero_coeff(self):
        c = self.coeffs[0]
        return c - c

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if other.var != self.var:
            raise ValueError(f"cannot combine series in {self.var} and {other.var}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries) and other.var == self.var:
            n = min(self.order, other.order)
            return TruncatedSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], self.var)
        if isinstance(other, TruncatedSeries):
            self._check(other)
        # scalar: add to the constant term
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries) and other.var == self.var:
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            zero = self._zero_coeff()
            out = []
            for k in range(n + 1):
                acc = zero
                for i in range(k + 1):
                    ai = a[i]
                    if ai:
                        bi = b[k - i]
                        if bi:
                            acc = acc + ai * bi
                out.append(acc)
            return TruncatedSeries(out, self.var)
        if isinstance(other, TruncatedSeries):
            self._check(other)
        return TruncatedSeries([c * other for c in self.coeffs], self.var)

    def __rmul__(self, other):
        return TruncatedSeries([other * c for c in self.coeffs], self.var)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries) and other.var == self.var:
            return self * series_inv(other)
        if isinstance(other, TruncatedSeries):
            self._check(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return TruncatedSeries([c / other for c in self.coeffs], self.var)
        inv = ring_inverse(other)
        return TruncatedSeries([c * inv for c in self.coeffs], self.var)

    def inverse(self) -> "TruncatedSeries":
        return series_inv(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else series_inv(self)
        result = TruncatedSeries.constant(self.coeffs[0] - self.coeffs[0] + 1, self.order, self.var)
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitutions ----------------------------------------------------
    def scale(self, c) -> "TruncatedSeries":
        """Substitute ``x -> c*x``: coefficient k gets multiplied by ``c**k``."""
        out = []
        power = None
        for k, a in enumerate(self.coeffs):
            power = c ** 0 if k == 0 else power * c
            out.append(a * power if k else a)
        return TruncatedSeries(out, self.var)

    def dilate(self, n: int, order: int | None = None) -> "TruncatedSeries":
        """Substitute ``x -> x**n`` keeping terms up to ``order``."""
        if n < 1:
            raise ValueError("dilation factor must be positive")
        order = self.order * n if order is None else order
        if order > self.order * n + (n - 1):
            raise ValueError("dilation cannot produce coefficients beyond the known precision")
        zero = self._zero_coeff()
        out = [zero] * (order + 1)
        for k, a in enumerate(self.coeffs):
            if k * n <= order:
                out[k * n] = a
        return TruncatedSeries(out, self.var)

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.var)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.var == other.var and self.coeffs == other.coeffs
        if self.order == 0:
            return self.coeffs[0] == other
        return self.coeffs[0] == other and not any(self.coeffs[1:])

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if isinstance(c, TruncatedSeries) or " " in cs:
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if cs == "1" else f"{cs}*{mono}"))
        return (" + ".join(parts) if parts else "0") + f" + O({self.var}^{self.order + 1})"


def _is_zero(c):
    return not c


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """``exp(f)`` for ``f`` with zero constant term, via ``(exp f)' = f' exp f``."""
    if not _is_zero(f[0]):
        raise NonUnitError("exp needs a series with zero constant term")
    zero = f[0] - f[0]
    g = [zero + 1]
    for n in range(1, f.order + 1):
        acc = zero
        for k in range(1, n + 1):
            if f[k]:
                acc = acc + (k * f[k]) * g[n - k]
        g.append(acc / n)
    return TruncatedSeries(g, f.var)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """``log(f)`` for ``f`` with constant term exactly 1."""
    if f[0] != 1:
        raise NonUnitError("log needs a series with constant term 1")
    zero = f[0] - f[0]
    g = [zero]
    for n in range(1, f.order + 1):
        acc = n * f[n]
        for k in range(1, n):
            if g[k] and f[n - k]:
                acc = acc - (k * g[k]) * f[n - k]
        g.append(acc / n)
    return TruncatedSeries(g, f.var)


def series_inv(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be a unit of the ring."""
    if _is_zero(f[0]):
        raise NonUnitError("cannot invert a series with zero constant term")
    try:
        c0inv = ring_inverse(f[0])
    except (NonUnitError, ZeroDivisionError) as exc:
        raise NonUnitError(f"constant term {f[0]} is not a unit") from exc
    zero = f[0] - f[0]
    g = [c0inv]
    for n in range(1, f.order + 1):
        acc = zero
        for k in range(1, n + 1):
            if f[k]:
                acc = acc + f[k] * g[n - k]
        g.append(-(acc * c0inv))
    return TruncatedSeries(g, f.var)


def series_pow_scalar(f: TruncatedSeries, c) -> TruncatedSeries:
    """``f**c`` for rational ``c``, defined as ``exp(c log f)``; needs ``f[0] == 1``."""
    c = to_fraction(c)
    if f[0] != 1:
        raise NonUnitError("rational powers need a series with constant term 1")
    return series_exp(series_log(f) * c)
