"""Virtual torus characters and the higher-rank vertex.

Exponents are stored doubled: ``Monomial((2, 0, 0), ())`` is ``t1`` and
``Monomial((1, 1, 1), ())`` is the square root of ``t1 t2 t3``.  Framing indices
are 0-based throughout the Python API.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedCharacter

__all__ = [
    "Monomial",
    "VirtualCharacter",
    "bar",
    "vertex_term",
    "tvir",
    "substitute_w",
    "framing_dependent_part",
    "CY",
    "P_FACTOR",
]


@dataclass(frozen=True, order=True)
class Monomial:
    """``t^(texp/2) * w^(wexp/2)`` with doubled integer exponents."""

    texp: tuple
    wexp: tuple = ()

    def __post_init__(self):
        texp = tuple(int(x) for x in self.texp)
        wexp = tuple(int(x) for x in self.wexp)
        if len(texp) != 3:
            raise MalformedCharacter(f"a monomial needs exactly three t-exponents, got {texp}")
        object.__setattr__(self, "texp", texp)
        object.__setattr__(self, "wexp", wexp)

    @property
    def width(self) -> int:
        return len(self.wexp)

    def padded(self, r: int) -> "Monomial":
        if self.width == r:
            return self
        if self.width == 0:
            return Monomial(self.texp, (0,) * r)
        raise MalformedCharacter(f"cannot widen a monomial with {self.width} framing slots to {r}")

    def __mul__(self, other: "Monomial") -> "Monomial":
        r = max(self.width, other.width)
        a, b = self.padded(r), other.padded(r)
        return Monomial(
            tuple(x + y for x, y in zip(a.texp, b.texp)),
            tuple(x + y for x, y in zip(a.wexp, b.wexp)),
        )

    def inverse(self) -> "Monomial":
        return Monomial(tuple(-x for x in self.texp), tuple(-x for x in self.wexp))

    def is_constant(self) -> bool:
        return not any(self.texp) and not any(self.wexp)

    def is_integral(self) -> bool:
        return all(x % 2 == 0 for x in self.texp + self.wexp)

    def cy_power(self):
        """``k`` if this monomial is ``(t1 t2 t3)^(k/2)`` (doubled k), else None."""
        a, b, c = self.texp
        if a == b == c and not any(self.wexp):
            return a
        return None

    def __str__(self):
        names = [f"t{i + 1}" for i in range(3)] + [f"w{j + 1}" for j in range(self.width)]
        parts = []
        for name, d in zip(names, self.texp + self.wexp):
            if d == 0:
                continue
            e = d // 2 if d % 2 == 0 else f"{d}/2"
            parts.append(name if e == 1 else f"{name}^{e}" if isinstance(e, int) and e > 0 else f"{name}^({e})")
        return "*".join(parts) if parts else "1"


class VirtualCharacter:
    """A finite signed sum of monomials, stored as ``{Monomial: multiplicity}``.

    All monomials share one framing width (``width``); width-0 inputs are
    widened automatically when combined with wider ones.
    """

    __slots__ = ("terms", "width")

    def __init__(self, terms=None, width: int | None = None):
        terms = dict(terms or {})
        if width is None:
            width = max((m.width for m in terms), default=0)
        clean = {}
        for m, c in terms.items():
            if not isinstance(m, Monomial):
                raise MalformedCharacter(f"{m!r} is not a Monomial")
            if not isinstance(c, int) or isinstance(c, bool):
                raise MalformedCharacter(f"multiplicity {c!r} is not an integer")
            if c:
                m = m.padded(width)
                clean[m] = clean.get(m, 0) + c
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})
        object.__setattr__(self, "width", width)

    def __setattr__(self, name, value):
        raise AttributeError("VirtualCharacter values are immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, width: int = 0) -> "VirtualCharacter":
        return cls({}, width)

    @classmethod
    def monomial(cls, texp=(0, 0, 0), wexp=(), mult: int = 1) -> "VirtualCharacter":
        m = Monomial(tuple(texp), tuple(wexp))
        return cls({m: mult}, m.width)

    @classmethod
    def one(cls, width: int = 0) -> "VirtualCharacter":
        return cls({Monomial((0, 0, 0), (0,) * width): 1}, width)

    @classmethod
    def t(cls, i: int, power: int = 1) -> "VirtualCharacter":
        """``t_{i+1}^power`` (0-based index, integer power)."""
        texp = [0, 0, 0]
        texp[i] = 2 * power
        return cls.monomial(texp)

    @classmethod
    def w(cls, j: int, r: int, power: int = 1) -> "VirtualCharacter":
        wexp = [0] * r
        wexp[j] = 2 * power
        return cls.monomial((0, 0, 0), wexp)

    # -- arithmetic -------------------------------------------------------
    def _common(self, other):
        if not isinstance(other, VirtualCharacter):
            if isinstance(other, int) and not isinstance(other, bool):
                return VirtualCharacter.one(self.width) * other if other else VirtualCharacter.zero(self.width)
            return None
        return other

    def __add__(self, other):
        other = self._common(other)
        if other is None:
            return NotImplemented
        width = max(self.width, other.width)
        out = {}
        for src in (self.terms, other.terms):
            for m, c in src.items():
                m = m.padded(width)
                out[m] = out.get(m, 0) + c
        return VirtualCharacter(out, width)

    __radd__ = __add__

    def __neg__(self):
        return VirtualCharacter({m: -c for m, c in self.terms.items()}, self.width)

    def __sub__(self, other):
        other = self._common(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return VirtualCharacter({m: c * other for m, c in self.terms.items()}, self.width)
        if isinstance(other, Monomial):
            width = max(self.width, other.width)
            return VirtualCharacter({m * other: c for m, c in self.terms.items()}, width)
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        width = max(self.width, other.width)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return VirtualCharacter(out, width)

    __rmul__ = __mul__

    # -- queries ----------------------------------------------------------
    @property
    def rank(self) -> int:
        return sum(self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def constant_term(self) -> int:
        for m, c in self.terms.items():
            if m.is_constant():
                return c
        return 0

    def cy_weights(self) -> dict:
        """Multiplicities of monomials that are pure powers ``(t1 t2 t3)^(k/2)``, keyed by doubled ``k``."""
        out = {}
        for m, c in self.terms.items():
            k = m.cy_power()
            if k is not None:
                out[k] = c
        return out

    def is_pure_t(self) -> bool:
        return all(not any(m.wexp) for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = self._common(other)
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        width = max(self.width, other.width)
        a = {m.padded(width): c for m, c in self.terms.items()}
        b = {m.padded(width): c for m, c in other.terms.items()}
        return a == b

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (mc[0].wexp, mc[0].texp))

    def __repr__(self):
        return f"VirtualCharacter({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            s = str(m)
            parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ----------------------------------------------------
    def dump(self) -> list:
        """``[{"texp": [...], "wexp": [...], "mult": m}, ...]`` with doubled exponents."""
        return [{"texp": list(m.texp), "wexp": list(m.wexp), "mult": c} for m, c in self.sorted_terms()]

    @classmethod
    def load(cls, data) -> "VirtualCharacter":
        terms = {}
        width = None
        for entry in data:
            try:
                m = Monomial(tuple(entry["texp"]), tuple(entry.get("wexp", ())))
                c = entry["mult"]
            except (KeyError, TypeError) as exc:
                raise MalformedCharacter(f"bad character entry {entry!r}") from exc
            if width is None:
                width = m.width
            elif m.width != width:
                raise MalformedCharacter("all entries must have the same number of framing exponents")
            terms[m] = terms.get(m, 0) + c
        return cls(terms, width or 0)


CY = Monomial((2, 2, 2))
_CY_INV = CY.inverse()

# (1 - t1)(1 - t2)(1 - t3)
P_FACTOR = (
    (VirtualCharacter.one() - VirtualCharacter.t(0))
    * (VirtualCharacter.one() - VirtualCharacter.t(1))
    * (VirtualCharacter.one() - VirtualCharacter.t(2))
)


def bar(V: VirtualCharacter) -> VirtualCharacter:
    """Dual character: every exponent negated."""
    return VirtualCharacter({m.inverse(): c for m, c in V.terms.items()}, V.width)


def _check_quotient_character(Q, name):
    if not isinstance(Q, VirtualCharacter):
        raise MalformedCharacter(f"{name} must be a VirtualCharacter")
    for m, c in Q.terms.items():
        if c != 1 or any(m.wexp) or not m.is_integral() or min(m.texp) < 0:
            raise MalformedCharacter(f"{name} is not the character of a monomial ideal quotient: term {m} with multiplicity {c}")


def vertex_term(Qi: VirtualCharacter, Qj: VirtualCharacter, i: int, j: int, r: int) -> VirtualCharacter:
    """``w_i^-1 w_j (Q_j - bar(Q_i)/t + (1-t1)(1-t2)(1-t3)/t * Q_j bar(Q_i))`` with ``t = t1 t2 t3``.

    ``i`` and ``j`` are 0-based framing indices in ``range(r)``.
    """
    _check_quotient_character(Qi, "Qi")
    _check_quotient_character(Qj, "Qj")
    if not (0 <= i < r and 0 <= j < r):
        raise MalformedCharacter(f"framing indices ({i}, {j}) out of range for r={r}")
    Qi_bar = bar(Qi)
    body = Qj - Qi_bar * _CY_INV + (P_FACTOR * _CY_INV) * (Qj * Qi_bar)
    wexp = [0] * r
    wexp[i] -= 2
    wexp[j] += 2
    return VirtualCharacter(body.terms, 0) * Monomial((0, 0, 0), tuple(wexp))


def _lambda_monomials(lam, r):
    if lam is None:
        return None
    lam = list(lam)
    if len(lam) != r:
        raise MalformedCharacter(f"need {r} framing twists, got {len(lam)}")
    out = []
    for x in lam:
        if isinstance(x, Monomial):
            m = x
        else:
            m = Monomial(tuple(2 * int(e) for e in x), ())
        if any(m.wexp) or not m.is_integral():
            raise MalformedCharacter(f"framing twist {m} must be a t-monomial with integer exponents")
        out.append(Monomial(m.texp, ()))
    return out


def tvir(P, lam=None) -> VirtualCharacter:
    """Virtual tangent character ``sum_{i,j} V_ij`` at the fixed point ``P``.

    ``lam`` optionally gives one t-monomial per color (a Monomial or an
    integer exponent triple); it replaces ``w_i`` by ``lam_i w_i``.
    """
    from .partitions import ColoredPartition, ideal_character

    if not isinstance(P, ColoredPartition):
        P = ColoredPartition(tuple(P))
    r = P.r
    lams = _lambda_monomials(lam, r)
    Q = [ideal_character(pi) for pi in P.parts]
    total = VirtualCharacter.zero(r)
    for i in range(r):
        for j in range(r):
            V = vertex_term(Q[i], Q[j], i, j, r)
            if lams is not None:
                V = V * (lams[i].inverse() * lams[j])
            total = total + V
    if total.rank != 0:
        raise AssertionError(f"virtual tangent character of {P} has rank {total.rank}, expected 0")
    return total


def substitute_w(V: VirtualCharacter, lam) -> VirtualCharacter:
    """Replace each ``w_i`` by ``lam_i w_i`` in ``V``."""
    lams = _lambda_monomials(lam, V.width)
    out = {}
    for m, c in V.terms.items():
        texp = list(m.texp)
        for d, l in zip(m.wexp, lams):
            # lam_i^(d/2): lam's doubled exponents are even, so the product stays integral
            for a in range(3):
                texp[a] += l.texp[a] * d // 2
        nm = Monomial(tuple(texp), m.wexp)
        out[nm] = out.get(nm, 0) + c
    return VirtualCharacter(out, V.width)


def framing_dependent_part(V: VirtualCharacter) -> VirtualCharacter:
    """The terms of ``V`` carrying a nonzero framing exponent."""
    return VirtualCharacter({m: c for m, c in V.terms.items() if any(m.wexp)}, V.width)
