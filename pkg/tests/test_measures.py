import random
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_bracket_value, naive_theta_product
from quotdt.algebra import Cyclotomic
from quotdt.characters import Monomial, VirtualCharacter, bar, tvir
from quotdt.errors import ConstantTerm, MalformedCharacter, MalformedInput, NonGenericPoint, ResamplingExhausted, ZeroWeightValue
from quotdt.measures import (
    EvalPoint,
    LinearPoint,
    bracket,
    bracket_bseries,
    elliptic,
    euler,
    random_eval_point,
    random_linear_point,
    random_rational,
    sample_until,
)
from quotdt.partitions import ColoredPartition, PlanePartition, enumerate_colored

T = VirtualCharacter.t
BOX1 = ColoredPartition((PlanePartition(((0, 0, 0),)),))


def terms_of(V):
    return {(m.texp, m.wexp): c for m, c in V.terms.items()}


def br(x):
    return x - 1 / x


def test_bracket_examples():
    assert bracket(VirtualCharacter.zero(), EvalPoint((2, 3, 5))) == 1
    assert bracket(T(0) - T(1), EvalPoint((2, 3, 5))) == F(9, 16)


def test_bracket_of_one_box():
    a, b, c = F(2), F(3), F(5)
    B = br(a * b) * br(a * c) * br(b * c) / (br(a) * br(b) * br(c))
    V = tvir(BOX1)
    pt = EvalPoint((a, b, c))
    assert bracket(-V, pt) == B == F(539, 12)
    assert bracket(V, pt) == 1 / B
    assert naive_bracket_value(terms_of(-V), (a, b, c), ()) == B


@pytest.mark.parametrize("P", list(enumerate_colored(2, 2)), ids=str)
def test_bracket_against_oracle(P):
    rng = random.Random(str(P))
    pt = random_eval_point(2, rng)
    V = -tvir(P)
    assert bracket(V, pt) == naive_bracket_value(terms_of(V), pt.thalf, pt.whalf)


def test_bracket_multiplicative_and_dual():
    V = tvir(ColoredPartition((PlanePartition(((0, 0, 0), (1, 0, 0))),)))
    W = T(0) - T(2, 2)
    pt = EvalPoint((F(3, 2), F(-5, 7), F(11, 4)))
    assert bracket(V + W, pt) == bracket(V, pt) * bracket(W, pt)
    # [x^-1] = -[x]; sign is (-1)^(number of terms counted with multiplicity)
    sign = (-1) ** sum(V.terms.values())
    assert bracket(bar(V), pt) == sign * bracket(V, pt)


def test_bracket_over_cyclotomic_matches_rational_path():
    V = -tvir(ColoredPartition((PlanePartition(((0, 0, 0),)), PlanePartition(()))))
    rat = EvalPoint((2, 3, F(-1, 5)), (F(7, 3), 4))
    cyc = EvalPoint(tuple(Cyclotomic(4, [x]) for x in rat.thalf), tuple(Cyclotomic(4, [x]) for x in rat.whalf))
    assert bracket(V, cyc) == bracket(V, rat)


def test_bracket_errors():
    with pytest.raises(NonGenericPoint):
        bracket(T(0) - T(1), EvalPoint((2, 1, 5)))
    with pytest.raises(MalformedCharacter):
        bracket(T(0), EvalPoint((2, 3, 5)))
    with pytest.raises(ConstantTerm):
        bracket(VirtualCharacter.one() - T(0), EvalPoint((2, 3, 5)))


def test_euler_examples():
    assert euler(T(0) - T(1), LinearPoint((1, 2, 3))) == F(1, 2)
    s = (F(2), F(3), F(7))
    assert euler(-tvir(BOX1), LinearPoint(s)) == (s[0] + s[1]) * (s[0] + s[2]) * (s[1] + s[2]) / (s[0] * s[1] * s[2])
    doubled = T(0) * 2 - T(1) - T(2)
    assert euler(doubled, LinearPoint((5, 2, 3))) == F(25, 6)


def test_euler_zero_weights():
    V = VirtualCharacter.monomial((2, -2, 0)) - VirtualCharacter.monomial((-2, 2, 0))
    with pytest.raises(ZeroWeightValue):
        euler(V, LinearPoint((1, 1, 3)))
    assert euler(V, LinearPoint((1, 1, 3)), LinearPoint((1, 0, 0))) == -1
    vanishing = VirtualCharacter.monomial((2, -2, 0)) - T(2)
    assert euler(vanishing, LinearPoint((1, 1, 3)), LinearPoint((1, 0, 0))) == 0
    assert issubclass(ZeroWeightValue, NonGenericPoint)


def test_elliptic_trivial_and_p0_slice():
    pt = EvalPoint((2, 3, 5))
    one = elliptic(VirtualCharacter.zero(), pt, 4)
    assert list(one.coeffs) == [1, 0, 0, 0, 0]
    V = -tvir(BOX1)
    e = elliptic(V, pt, 5)
    assert e[0] == bracket(V, pt)
    assert elliptic(V, pt, 0)[0] == bracket(V, pt)


def _value_of(pt):
    def value_of(key):
        m = Monomial(*key)
        y = pt.monomial_value(m)
        yinv = pt.monomial_value(m.inverse())
        half = pt.monomial_value(Monomial(tuple(x // 2 for x in m.texp), tuple(x // 2 for x in m.wexp)))
        return y, yinv, half - 1 / half

    return value_of


@pytest.mark.parametrize("P", list(enumerate_colored(1, 2)) + list(enumerate_colored(2, 1)), ids=str)
def test_elliptic_against_direct_product(P):
    pt = random_eval_point(P.r, random.Random(11))
    V = -tvir(P)
    got = elliptic(V, pt, 4)
    want = naive_theta_product(terms_of(V), _value_of(pt), 4, F(1))
    assert got == want


def test_elliptic_over_cyclotomic_against_direct_product():
    z = Cyclotomic.zeta(12)
    pt = EvalPoint((Cyclotomic(12, [2]), Cyclotomic(12, [3]), z ** 2 * Cyclotomic(12, [F(1, 6)])))
    V = -tvir(BOX1)
    got = elliptic(V, pt, 3)
    one = Cyclotomic(12, [1])
    value_of = _value_of(pt)

    def vo(key):
        y, yinv, h = value_of(key)
        return y, yinv, h

    assert got == naive_theta_product(terms_of(V), vo, 3, one)


def test_elliptic_prefactors_cancel_at_rank_zero():
    # theta(p; y) = C(p) * theta_hat(p; y) for a y-independent C; a rank-0 product loses C
    p, C = sp.symbols("p C")
    V = -tvir(BOX1)
    ys = {(m.texp, m.wexp): c for m, c in V.terms.items()}
    vals = (2, 3, 5)
    order = 3

    def theta_hat(key):
        texp, _ = key
        y = sp.Rational(1)
        for d, a in zip(texp, vals):
            y *= sp.Rational(a) ** d
        half = sp.sqrt(y)
        out = half - 1 / half
        for n in range(1, order + 1):
            out *= (1 - y * p ** n) * (1 - p ** n / y)
        return out

    full = sp.Integer(1)
    for key, c in ys.items():
        full *= (C * theta_hat(key)) ** c
    full = sp.cancel(full)
    assert C not in full.free_symbols
    num, den = sp.fraction(full)
    ser = sp.expand(num * sp.series(1 / den, p, 0, order + 1).removeO())
    got = elliptic(V, EvalPoint(vals), order)
    for k in range(order + 1):
        assert sp.Rational(sp.nsimplify(ser.coeff(p, k))) == sp.Rational(got[k].numerator, got[k].denominator)


def test_bseries_examples():
    s = bracket_bseries(T(0) - T(1), LinearPoint((1, 2, 3)), 3)
    assert s[0] == F(1, 2)
    assert list(bracket_bseries(VirtualCharacter.zero(), LinearPoint((1, 2, 3)), 2).coeffs) == [1, 0, 0]


@pytest.mark.parametrize("P", list(enumerate_colored(1, 3)) + list(enumerate_colored(2, 2)), ids=str)
def test_bseries_constant_term_is_euler(P):
    pt = random_linear_point(P.r, random.Random(5))
    V = -tvir(P)
    assert bracket_bseries(V, pt, 2)[0] == euler(V, pt)


def test_point_json_roundtrip():
    pt = EvalPoint((F(1, 2), 3, -4), (F(5, 7),))
    assert EvalPoint.from_json(pt.to_json()) == pt
    z = Cyclotomic.zeta(6)
    cpt = EvalPoint((z, Cyclotomic(6, [2]), z ** 5), (z ** 2,))
    assert EvalPoint.from_json(cpt.to_json()) == cpt
    mixed = EvalPoint.from_json({"m": 4, "thalf": ["2", "3", {"m": 4, "coeffs": ["0", "1"]}], "whalf": []})
    assert all(isinstance(x, Cyclotomic) for x in mixed.thalf)
    lp = LinearPoint((1, F(-2, 3), 5), (7,))
    assert LinearPoint.from_json(lp.to_json()) == lp
    with pytest.raises(MalformedInput):
        EvalPoint((1, 0, 2))
    with pytest.raises(MalformedInput):
        EvalPoint.from_json({"whalf": []})
    with pytest.raises(MalformedInput):
        LinearPoint((1, 2))


def test_adams_operation():
    pt = EvalPoint((2, F(-1, 3), 5), (7,))
    assert pt.adams(2) == EvalPoint((4, F(1, 9), 25), (49,))
    assert pt.cy_half() == F(-10, 3)


def test_sampling():
    rng = random.Random(0)
    xs = [random_rational(rng) for _ in range(200)]
    assert all(x not in (0, 1, -1) for x in xs)
    assert all(abs(x.numerator) <= 97 and x.denominator <= 97 for x in xs)
    with pytest.raises(ResamplingExhausted):
        sample_until(lambda: 1, lambda x: bracket(T(0) - T(1), EvalPoint((2, 1, 5))), retries=3)
    pt, val = sample_until(lambda: EvalPoint((2, 3, 5)), lambda p: bracket(T(0) - T(1), p))
    assert val == F(9, 16)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_bracket_rational_and_generic_paths_agree(seed):
    rng = random.Random(seed)
    rat = random_eval_point(1, rng)
    cyc = EvalPoint(tuple(Cyclotomic(3, [x]) for x in rat.thalf), tuple(Cyclotomic(3, [x]) for x in rat.whalf))
    V = -tvir(ColoredPartition((PlanePartition(((0, 0, 0), (0, 0, 1))),)))
    try:
        expected = bracket(V, rat)
    except NonGenericPoint:
        return
    assert bracket(V, cyc) == expected
