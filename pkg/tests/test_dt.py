import json
import random
from fractions import Fraction as F

import pytest

from oracles import macmahon_product, series_power_int
from quotdt.algebra import Cyclotomic, TruncatedSeries
from quotdt.characters import bar, framing_dependent_part
from quotdt.dt import (
    VerificationReport,
    check_trials,
    dtcoh_localization,
    dtell_localization,
    dtk_localization,
    elliptic_example_q1,
    euler_on_cy_plane,
    fixed_points,
    framing_part_q1,
    record_trial,
    restriction_point,
    verify_coh_closed,
    verify_cy_specialization,
    verify_framing_independence,
    verify_kth_closed,
    verify_lambda_independence,
    verify_motivic_factorization,
    verify_product_formula,
)
from quotdt.errors import NonGenericPoint
from quotdt.measures import EvalPoint, LinearPoint, bracket, euler, random_linear_point
from quotdt.series import phi


def br(x):
    return x - 1 / x


def test_kth_localization_low_orders():
    a, b, c = F(2), F(3), F(5)
    s = dtk_localization(1, 2, EvalPoint((a, b, c), (F(7),)))
    assert s[0] == 1
    assert s[1] == br(a * b) * br(a * c) * br(b * c) / (br(a) * br(b) * br(c))


def test_nongeneric_point_reports_partition():
    with pytest.raises(NonGenericPoint) as info:
        dtk_localization(1, 1, EvalPoint((1, 3, 5), (2,)))
    assert info.value.partition is not None
    assert info.value.partition.size == 1


def test_width_mismatch():
    with pytest.raises(ValueError):
        dtk_localization(2, 1, EvalPoint((2, 3, 5), (2,)))


def test_coh_localization_rank_one():
    s = (F(2), F(3), F(7))
    got = dtcoh_localization(1, 1, LinearPoint(s, (F(4),)))
    assert list(got.coeffs) == [1, phi(s)]


def test_framing_part_is_constant():
    rng = random.Random(1)
    for _ in range(4):
        assert framing_part_q1(random_linear_point(2, rng)) == -2


def test_framing_part_pieces():
    # each fixed point alone depends on the framing values
    pt = LinearPoint((2, 3, 7), (F(1, 3), F(5, 2)))
    vals = [euler(-framing_dependent_part(T), pt) for _, T in fixed_points(2, 1)]
    assert len(vals) == 2 and sum(vals) == -2
    other = LinearPoint((2, 3, 7), (F(-4, 3), F(9, 2)))
    assert [euler(-framing_dependent_part(T), other) for _, T in fixed_points(2, 1)] != vals


@pytest.mark.parametrize("r", [1, 2, 3])
def test_cy_plane_values_are_signed_counts(r):
    pt = LinearPoint((1, 2, -3), tuple(F(j + 2, 7) for j in range(r)))
    got = dtcoh_localization(r, 3, pt)
    counts = series_power_int(macmahon_product(3), r, 3)
    assert [abs(c) for c in got.coeffs] == counts
    for n in range(1, 4):
        for P, T in fixed_points(r, n):
            assert euler_on_cy_plane(-T, pt) in (1, -1)


def test_summation_order_irrelevant():
    pt = LinearPoint((F(3, 2), F(-2, 5), 7), (F(1, 3), 2))
    pts = list(fixed_points(2, 3))
    forward = sum((euler(-T, pt) for _, T in pts), F(0))
    random.Random(0).shuffle(pts)
    shuffled = sum((euler(-T, pt) for _, T in pts), F(0))
    assert forward == shuffled == dtcoh_localization(2, 3, pt)[3]


def test_tvir_symmetry_gives_sign_under_duality():
    # bracket of the dual character differs by (-1)^(number of weights)
    pt = EvalPoint((2, 3, 5), (F(7, 2), F(-3, 4)))
    for _, T in fixed_points(2, 2):
        assert bracket(-bar(T), pt) == (-1) ** sum(T.terms.values()) * bracket(-T, pt)


def test_elliptic_localization_p0_slice():
    pt = EvalPoint((F(2), F(3), F(-5, 3)), (F(7, 2),))
    ell = dtell_localization(1, 2, 3, pt)
    kth = dtk_localization(1, 2, pt)
    assert [c[0] for c in ell.coeffs] == list(kth.coeffs)
    assert list(ell[0].coeffs) == [1, 0, 0, 0]


@pytest.mark.parametrize("k,value", [(0, -3), (1, 0), (2, 0), (3, 3), (4, 0), (5, 0)])
def test_elliptic_example_small_p(k, value):
    got = elliptic_example_q1(k, 2)
    zero = Cyclotomic(12, [0])
    assert list(got.coeffs) == [Cyclotomic(12, [value]), zero, zero]


def test_restriction_point():
    pt = restriction_point(3, 2, random.Random(0))
    assert pt.cy_half() == Cyclotomic.zeta(6, 2)
    assert pt.r == 3


def test_report_mechanics():
    rep = VerificationReport("demo", 0, 3)
    one = TruncatedSeries([F(1), F(2)], "q")
    record_trial(rep, {"x": 1}, one, one)
    assert rep.finalize().passed
    record_trial(rep, {"x": 2}, one, TruncatedSeries([F(1), F(3)], "q"))
    assert not rep.finalize().passed
    assert rep.deltas[1] == ["0", "-1"]
    assert json.loads(rep.to_json())["identity"] == "demo"
    assert not VerificationReport("empty", 0, 3).finalize().passed
    with pytest.raises(ValueError):
        check_trials(2)


def test_verifiers_smoke():
    for rep in (
        verify_kth_closed(1, 2),
        verify_framing_independence(2, 2),
        verify_product_formula(2, 2),
        verify_coh_closed(1, 2),
        verify_cy_specialization(1, 5),
        verify_lambda_independence(2, 2),
        verify_motivic_factorization(2, 3),
    ):
        assert rep.passed, rep.identity
        assert rep.trials >= 1


def test_cy_specialization_coefficients():
    rep = verify_cy_specialization(1, 5)
    assert rep.rhs[0] == ["1", "-1", "3", "-6", "13", "-24"]
    assert rep.lhs[0] == rep.rhs[0]
    assert rep.points[0]["s"] == ["1", "2", "-3"]


def test_reports_are_seed_deterministic():
    a = verify_kth_closed(2, 2, 3, seed=9).to_json()
    b = verify_kth_closed(2, 2, 3, seed=9).to_json()
    c = verify_kth_closed(2, 2, 3, seed=10).to_json()
    assert a == b and a != c
