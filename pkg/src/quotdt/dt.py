"""Localization sums over colored partitions and identity verification.

Each ``verify_*`` function compares two exactly computed series at several
independently sampled points and returns a :class:`VerificationReport` that
passes only if every coefficient difference is exactly zero.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Cyclotomic, LaurentHalf, TruncatedSeries
from .characters import VirtualCharacter, framing_dependent_part, tvir
from .errors import NonGenericPoint, ZeroWeightValue
from .measures import (
    EvalPoint,
    LinearPoint,
    bracket,
    elliptic,
    euler,
    random_eval_point,
    random_linear_point,
    random_rational,
    sample_until,
)
from .partitions import enumerate_colored
from .series import dtcoh_closed, dtell_closed, dtk_closed, dtmot_closed, macmahon

__all__ = [
    "VerificationReport",
    "DEFAULT_Q_ORDER",
    "DEFAULT_ELL_Q_ORDER",
    "DEFAULT_P_ORDER",
    "DEFAULT_B_ORDER",
    "fixed_points",
    "dtk_localization",
    "dtcoh_localization",
    "euler_on_cy_plane",
    "on_cy_plane",
    "dtell_localization",
    "framing_part_q1",
    "elliptic_example_q1",
    "restriction_point",
    "verify_framing_independence",
    "verify_product_formula",
    "verify_kth_closed",
    "verify_coh_closed",
    "verify_cy_specialization",
    "verify_lambda_independence",
    "verify_elliptic_restriction",
    "verify_motivic_factorization",
    "series_to_strings",
]

DEFAULT_Q_ORDER = 4
DEFAULT_ELL_Q_ORDER = 3
DEFAULT_P_ORDER = 6
DEFAULT_B_ORDER = 4
MIN_TRIALS = 3


def scalar_str(x) -> str:
    if isinstance(x, TruncatedSeries):
        return "[" + ", ".join(scalar_str(c) for c in x.coeffs) + "]"
    return str(x)


def series_to_strings(f: TruncatedSeries) -> list:
    return [scalar_str(c) for c in f.coeffs]


@dataclass
class VerificationReport:
    """Outcome of one exact multipoint identity check."""

    identity: str
    seed: int | None
    trials: int
    points: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    lhs: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    passed: bool = False
    notes: dict = field(default_factory=dict)

    def finalize(self) -> "VerificationReport":
        self.passed = bool(self.deltas) and all(all(d == "0" for d in row) for row in self.deltas)
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _delta_row(lhs: TruncatedSeries, rhs: TruncatedSeries) -> list:
    return ["0" if not (a - b) else scalar_str(a - b) for a, b in zip(lhs.coeffs, rhs.coeffs)]


def record_trial(report, point_json, lhs, rhs):
    report.points.append(point_json)
    report.lhs.append(series_to_strings(lhs))
    report.rhs.append(series_to_strings(rhs))
    report.deltas.append(_delta_row(lhs, rhs))


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def fixed_points(r: int, n: int) -> tuple:
    """``(P, T^vir_P)`` for every r-colored partition of size n."""
    return tuple((P, tvir(P)) for P in enumerate_colored(r, n))


def _localize(r, order, measure, one):
    coeffs = [one]
    for n in range(1, order + 1):
        acc = None
        for P, T in fixed_points(r, n):
            try:
                val = measure(P, T)
            except NonGenericPoint as exc:
                raise NonGenericPoint(f"{exc} (fixed point {P})", partition=P) from exc
            acc = val if acc is None else acc + val
        coeffs.append(acc)
    return TruncatedSeries(coeffs, "q")


def dtk_localization(r: int, order: int, pt: EvalPoint) -> TruncatedSeries:
    """``sum_P q^|P| [-T^vir_P]`` at ``pt``."""
    _check_width(pt.r, r)
    one = pt.thalf[0] ** 0
    return _localize(r, order, lambda P, T: bracket(-T, pt), one)


# in-plane directions (s1 + s2 + s3 = 0) used to resolve removable zeros
CY_DIRECTIONS = ((1, -1, 0), (1, 0, -1), (0, 1, -1), (1, 1, -2), (1, -2, 1), (2, -1, -1), (3, -1, -2), (2, 3, -5))


def on_cy_plane(pt: LinearPoint) -> bool:
    return sum(pt.s) == 0


def euler_on_cy_plane(V: VirtualCharacter, pt: LinearPoint) -> Fraction:
    """Value at ``pt`` of the restriction of ``e(V)`` to the plane ``s1+s2+s3 = 0``.

    Weights pair up as ``mu`` and ``mu^-1 t^-1`` whose linear forms are
    negatives of each other on the plane, so the restriction is regular even
    where single factors vanish; it is computed as a first-order limit along
    an in-plane direction.
    """
    last = None
    for d in CY_DIRECTIONS:
        try:
            return euler(V, pt, LinearPoint(d, (0,) * pt.r))
        except ZeroWeightValue as exc:
            last = exc
    raise last


def dtcoh_localization(r: int, order: int, pt: LinearPoint, lam=None) -> TruncatedSeries:
    """``sum_P q^|P| e(-T^vir_P)`` at ``pt``, optionally with framing twists ``lam``.

    On the plane ``s1+s2+s3 = 0`` each summand is the restriction of the
    rational function to that plane (see :func:`euler_on_cy_plane`).
    """
    _check_width(pt.r, r)
    measure = euler_on_cy_plane if on_cy_plane(pt) else euler
    if lam is None:
        return _localize(r, order, lambda P, T: measure(-T, pt), Fraction(1))
    return _localize(r, order, lambda P, T: measure(-tvir(P, lam), pt), Fraction(1))


def dtell_localization(r: int, order: int, p_order: int, pt: EvalPoint) -> TruncatedSeries:
    """``sum_P q^|P| theta[-T^vir_P]``; coefficients are p-series."""
    _check_width(pt.r, r)
    one = TruncatedSeries.constant(pt.thalf[0] ** 0, p_order, "p")
    return _localize(r, order, lambda P, T: elliptic(-T, pt, p_order), one)


def _check_width(have, want):
    if have != want:
        raise ValueError(f"point carries {have} framing values but r={want}")


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------

def framing_part_q1(pt: LinearPoint) -> Fraction:
    """For r=2, sum over the two size-1 fixed points of ``e(-W)``, W the framing-dependent part of T^vir."""
    _check_width(pt.r, 2)
    total = Fraction(0)
    for _, T in fixed_points(2, 1):
        total += euler(-framing_dependent_part(T), pt)
    return total


def elliptic_example_q1(k: int, p_order: int, thalf12=(Fraction(2), Fraction(3))):
    """r=3, n=1 elliptic coefficient at ``t^(1/2) = zeta_6^k``, ``w_j^(1/2) = zeta_6^j``, in Q(zeta_12)."""
    z = Cyclotomic.zeta(12)
    a, b = (Cyclotomic(12, [x]) for x in thalf12)
    c = z ** (2 * k) / (a * b)
    pt = EvalPoint((a, b, c), tuple(z ** (2 * j) for j in (1, 2, 3)))
    return dtell_localization(3, 1, p_order, pt)[1]


def restriction_point(r: int, k: int, rng: random.Random) -> EvalPoint:
    """Random point with ``(t1 t2 t3)^(1/2) = exp(pi i k / r)``, in Q(zeta_2r)."""
    m = 2 * r
    zeta = Cyclotomic.zeta(m)
    a, b = random_rational(rng), random_rational(rng)
    A, B = Cyclotomic(m, [a]), Cyclotomic(m, [b])
    C = zeta ** k / (A * B)
    w = tuple(Cyclotomic(m, [random_rational(rng)]) for _ in range(r))
    return EvalPoint((A, B, C), w)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def check_trials(trials):
    if trials < MIN_TRIALS:
        raise ValueError(f"identity checks need at least {MIN_TRIALS} points")
    return trials


def _generic_rational_point(r, order, rng):
    def accept(pt):
        return dtk_localization(r, order, pt)

    return sample_until(lambda: random_eval_point(r, rng), accept)


def verify_kth_closed(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """Localization equals ``Exp(F_r)`` with the sign twist undone."""
    rng = random.Random(seed)
    rep = VerificationReport(f"dtk_closed[r={r}]", seed, check_trials(trials))

    def accept(pt):
        return dtk_localization(r, order, pt), dtk_closed(r, pt, order)

    for _ in range(trials):
        pt, (lhs, rhs) = sample_until(lambda: random_eval_point(r, rng), accept)
        record_trial(rep, pt.to_json(), lhs, rhs)
    return rep.finalize()


def verify_framing_independence(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """K-theoretic localization does not see the framing half-values."""
    rng = random.Random(seed)
    rep = VerificationReport(f"framing_independence[r={r}]", seed, check_trials(trials))
    base, ref = _generic_rational_point(r, order, rng)

    def accept(pt):
        return dtk_localization(r, order, pt)

    for _ in range(trials):
        pt, lhs = sample_until(lambda: base.with_whalf(tuple(random_rational(rng) for _ in range(r))), accept)
        record_trial(rep, pt.to_json(), lhs, ref)
    rep.notes["reference_point"] = base.to_json()
    return rep.finalize()


def _rank1_shifted(pt: EvalPoint, shift_doubled: int, order: int, base: TruncatedSeries) -> TruncatedSeries:
    # DT_1(-q t^(shift/2)) from the rank-1 series ``base``
    c = pt.cy_half() ** shift_doubled
    return base.scale(-c)


def verify_product_formula(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """``DT_r((-1)^r q) = prod_i DT_1(-q t^((-r-1)/2 + i))``, rank-1 side by localization."""
    rng = random.Random(seed)
    rep = VerificationReport(f"product_formula[r={r}]", seed, check_trials(trials))

    def accept(pt):
        lhs = dtk_localization(r, order, pt)
        lhs = lhs.scale(Fraction(-1)) if r % 2 else lhs
        rank1 = dtk_localization(1, order, EvalPoint(pt.thalf, pt.whalf[:1]))
        rhs = None
        for i in range(1, r + 1):
            f = _rank1_shifted(pt, -r - 1 + 2 * i, order, rank1)
            rhs = f if rhs is None else rhs * f
        return lhs, rhs

    for _ in range(trials):
        pt, (lhs, rhs) = sample_until(lambda: random_eval_point(r, rng), accept)
        record_trial(rep, pt.to_json(), lhs, rhs)
    return rep.finalize()


def verify_coh_closed(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """Cohomological localization equals ``M((-1)^r q)^(-r phi(s))``."""
    rng = random.Random(seed)
    rep = VerificationReport(f"dtcoh_closed[r={r}]", seed, check_trials(trials))

    def accept(pt):
        return dtcoh_localization(r, order, pt), dtcoh_closed(r, pt, order)

    for _ in range(trials):
        pt, (lhs, rhs) = sample_until(lambda: random_linear_point(r, rng), accept)
        record_trial(rep, pt.to_json(), lhs, rhs)
    return rep.finalize()


def verify_cy_specialization(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """On ``s1+s2+s3 = 0`` the cohomological series is ``M((-1)^r q)^r``.

    The first point is ``s = (1, 2, -3)``; the rest are random points on the
    same plane.  Framing values are random in every case.
    """
    rng = random.Random(seed)
    rep = VerificationReport(f"cy_specialization[r={r}]", seed, check_trials(trials))
    target = macmahon(r, r, order)

    def accept(pt):
        return dtcoh_localization(r, order, pt)

    for t in range(trials):
        if t == 0:
            make = lambda: LinearPoint((1, 2, -3), tuple(random_rational(rng) for _ in range(r)))
        else:
            def make():
                a, b = random_rational(rng), random_rational(rng)
                return LinearPoint((a, b, -a - b), tuple(random_rational(rng) for _ in range(r)))
        pt, lhs = sample_until(make, accept)
        record_trial(rep, pt.to_json(), lhs, target)
    return rep.finalize()


def _random_lambda(r, rng):
    return [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(r)]


def verify_lambda_independence(r: int, order: int = DEFAULT_Q_ORDER, trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """Twisting the framing by t-monomials leaves the cohomological series unchanged."""
    rng = random.Random(seed)
    rep = VerificationReport(f"lambda_independence[r={r}]", seed, check_trials(trials))
    for _ in range(trials):
        lam = _random_lambda(r, rng)

        def accept(pt):
            return dtcoh_localization(r, order, pt, lam), dtcoh_localization(r, order, pt)

        pt, (lhs, rhs) = sample_until(lambda: random_linear_point(r, rng), accept)
        record_trial(rep, {"point": pt.to_json(), "lambda": [list(x) for x in lam]}, lhs, rhs)
    return rep.finalize()


def verify_elliptic_restriction(r: int, k: int, order: int = DEFAULT_ELL_Q_ORDER, p_order: int = DEFAULT_P_ORDER,
                                trials: int = MIN_TRIALS, seed: int = 0) -> VerificationReport:
    """Elliptic series at ``t^(1/2) = exp(pi i k/r)`` against the constant closed form.

    ``notes["p_independent"]`` records whether every sampled series was free
    of positive powers of p, and ``notes["w_independent"]`` whether all
    points produced the same series.
    """
    if p_order < 1:
        raise ValueError("p-independence can only be observed with p_order >= 1")
    rng = random.Random(seed)
    rep = VerificationReport(f"elliptic_restriction[r={r},k={k}]", seed, check_trials(trials))
    closed = dtell_closed(r, k, order)
    seen = []
    p_indep = True

    def accept(pt):
        return dtell_localization(r, order, p_order, pt)

    for _ in range(trials):
        pt, lhs = sample_until(lambda: restriction_point(r, k, rng), accept)
        rhs = TruncatedSeries([TruncatedSeries.constant(c, p_order, "p") for c in closed.coeffs], "q")
        for coeff in lhs.coeffs:
            if any(bool(x) for x in coeff.coeffs[1:]):
                p_indep = False
        seen.append(lhs)
        record_trial(rep, pt.to_json(), lhs, rhs)
    rep.notes["p_independent"] = p_indep
    rep.notes["w_independent"] = all(s == seen[0] for s in seen)
    rep.notes["p_order"] = p_order
    return rep.finalize()


def verify_motivic_factorization(r: int, order: int = DEFAULT_Q_ORDER) -> VerificationReport:
    """``dtmot(r)(q) = prod_i dtmot(1)(q L^((-r-1)/2 + i))``; deterministic, no sampling."""
    rep = VerificationReport(f"motivic_factorization[r={r}]", None, 1)
    lhs = dtmot_closed(r, order)
    base = dtmot_closed(1, order)
    rhs = None
    for i in range(1, r + 1):
        f = base.scale(LaurentHalf({-r - 1 + 2 * i: 1}))
        rhs = f if rhs is None else rhs * f
    record_trial(rep, None, lhs, rhs)
    return rep.finalize()
