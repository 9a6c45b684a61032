from fractions import Fraction as F

import pytest
import sympy as sp

from oracles import macmahon_product, naive_fr_coeffs, series_power_int
from quotdt.algebra import LaurentHalf, TruncatedSeries
from quotdt.errors import NonConvergentFamily, NonGenericPoint
from quotdt.measures import EvalPoint, LinearPoint
from quotdt.series import (
    AdamsFamily,
    dtcoh_closed,
    dtell_closed,
    dtk_closed,
    dtmot_closed,
    f_r_series,
    laurent_kernel,
    macmahon,
    macmahon_log,
    phi,
    pleth_exp,
)


def q_over_one_minus_q_squared(order):
    return TruncatedSeries([F(k) for k in range(order + 1)], "q")


def br(x):
    return x - 1 / x


def test_pleth_exp_macmahon():
    got = pleth_exp(AdamsFamily.from_series(q_over_one_minus_q_squared(10)), 10)
    assert list(got.coeffs) == macmahon_product(10)
    assert list(got.coeffs[:7]) == [1, 1, 3, 6, 13, 24, 48]


def test_pleth_exp_small():
    zero = AdamsFamily.from_series(TruncatedSeries([F(0)] * 4, "q"))
    assert list(pleth_exp(zero, 3).coeffs) == [1, 0, 0, 0]
    f = AdamsFamily.from_series(TruncatedSeries([F(0), F(1), F(1), F(0)], "q"))
    assert list(pleth_exp(f, 3).coeffs) == [1, 1, 2, 2]
    assert list(pleth_exp(f, 0).coeffs) == [1]


def test_pleth_exp_rejects_low_levels():
    bad = AdamsFamily(lambda n, order: TruncatedSeries([F(0), F(1)] + [F(0)] * (order - 1), "q"))
    with pytest.raises(NonConvergentFamily):
        pleth_exp(bad, 3)
    with pytest.raises(ValueError):
        bad.level(0, 3)


def test_macmahon_examples():
    assert list(macmahon(1, 0, 4).coeffs) == [1, 1, 3, 6, 13]
    assert list(macmahon(1, 1, 4).coeffs) == [1, -1, 3, -6, 13]
    assert list(macmahon(2, 2, 3).coeffs) == series_power_int(macmahon_product(3), 2, 3) == [1, 2, 7, 18]
    inverse = macmahon(-1, 0, 6) * macmahon(1, 0, 6)
    assert list(inverse.coeffs) == [1, 0, 0, 0, 0, 0, 0]
    half = macmahon(F(1, 2), 0, 5)
    assert half * half == macmahon(1, 0, 5)
    with pytest.raises(ValueError):
        macmahon(1, 0, 40)


def test_macmahon_log_first_terms():
    assert list(macmahon_log(4).coeffs) == [0, 1, F(5, 2), F(10, 3), F(21, 4)]


def test_kernel_identity_symbolic():
    x, y = sp.symbols("x y", positive=True)  # square roots of a and q
    a, q = x ** 2, y ** 2
    # [aq][aq^-1] with [u] = u^(1/2) - u^(-1/2) equals a + a^-1 - q - q^-1
    prod = sp.expand((x * y - 1 / (x * y)) * (x / y - y / x))
    assert sp.simplify(prod - (a + 1 / a - q - 1 / q)) == 0
    assert sp.simplify(1 / prod + q / ((1 - a * q) * (1 - q / a))) == 0


def test_kernel_expansion():
    a = F(3)
    k = laurent_kernel(a, 4)
    # -q / ((1 - 3q)(1 - q/3)) = -q * sum_n q^n (3^(n+1) - 3^-(n+1)) / (3 - 1/3)
    want = [F(0)] + [-(a ** (n + 1) - a ** -(n + 1)) / (a - 1 / a) for n in range(4)]
    assert list(k.coeffs) == want


def test_f_r_first_coefficients():
    pt = EvalPoint((2, 3, 5))
    a, b, c = F(2), F(3), F(5)
    B = br(a * b) * br(a * c) * br(b * c) / (br(a) * br(b) * br(c))
    f1 = f_r_series(1, pt, 3)
    assert f1[0] == 0
    assert f1[1] == -B


@pytest.mark.parametrize("r,thalf", [(1, (F(2), F(3), F(5))), (2, (F(3, 2), F(-2), F(5, 7))), (3, (F(2), F(1, 3), F(-7, 2)))])
def test_f_r_against_sympy(r, thalf):
    assert list(f_r_series(r, EvalPoint(thalf), 3).coeffs) == naive_fr_coeffs(r, thalf, 3)


def test_dtk_closed_ignores_framing():
    a = dtk_closed(2, EvalPoint((2, 3, 5), (7, 11)), 3)
    b = dtk_closed(2, EvalPoint((2, 3, 5), (F(1, 4), -13)), 3)
    assert a == b
    assert a[0] == 1


def test_dtk_closed_rank_one_first_coefficient():
    a, b, c = F(2), F(3), F(5)
    B = br(a * b) * br(a * c) * br(b * c) / (br(a) * br(b) * br(c))
    assert dtk_closed(1, EvalPoint((a, b, c)), 2)[1] == B


def test_dtk_closed_degenerate_point():
    with pytest.raises(NonGenericPoint):
        dtk_closed(1, EvalPoint((1, 3, 5)), 2)


def test_dtcoh_closed():
    s = (F(2), F(3), F(7))
    assert dtcoh_closed(1, LinearPoint(s), 3)[1] == phi(s)
    assert list(dtcoh_closed(1, (1, 2, -3), 4).coeffs) == [1, -1, 3, -6, 13]
    assert list(dtcoh_closed(2, (1, 2, -3), 4).coeffs) == [1, 2, 7, 18, 47]
    with pytest.raises(NonGenericPoint):
        phi((0, 1, 2))


def test_dtell_closed():
    assert list(dtell_closed(2, 2, 3).coeffs) == [1, 2, 7, 18]
    # r=2, k=1: gcd 1, M((-1)^2 q^2) = M(q^2)
    assert list(dtell_closed(2, 1, 4).coeffs) == [1, 0, 1, 0, 3]
    # r=3, k=3: M((-1)^9 (-q))^3 = M(q)^3
    assert list(dtell_closed(3, 3, 3).coeffs) == series_power_int(macmahon_product(3), 3, 3)


def test_dtmot_closed():
    m1 = dtmot_closed(1, 2)
    assert m1[0] == LaurentHalf({0: 1})
    assert m1[1] == LaurentHalf({3: 1})
    with pytest.raises(ValueError):
        dtmot_closed(0, 2)


def test_dtmot_specializes_to_macmahon_power():
    # at L^(1/2) = 1 every factor becomes 1/(1 - q^m), rm times
    for r in (1, 2, 3):
        s = dtmot_closed(r, 4)
        at_one = [sum(c.terms.values(), F(0)) for c in s.coeffs]
        assert at_one == series_power_int(macmahon_product(4), r, 4)
