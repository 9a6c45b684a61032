"""Sum over fixed points and compare with the closed formulas, exactly.

Run: python3 demos/localization_vs_closed_forms.py
"""

import random

from quotdt.dt import dtcoh_localization, dtk_localization, framing_part_q1
from quotdt.measures import EvalPoint, LinearPoint, random_eval_point
from quotdt.series import dtcoh_closed, dtk_closed


def show(label, series):
    print(f"  {label}: " + ", ".join(str(c) for c in series.coeffs))


def main():
    rng = random.Random(2024)
    pt = random_eval_point(2, rng)
    print(f"K-theoretic, r=2, at t^(1/2) = {[str(x) for x in pt.thalf]}:")
    loc = dtk_localization(2, 3, pt)
    show("fixed-point sum", loc)
    show("closed form    ", dtk_closed(2, pt, 3))

    other = pt.with_whalf((random_eval_point(2, rng).whalf))
    print(f"  same t, new framing values: equal = {dtk_localization(2, 3, other) == loc}")

    print("\nCohomological, r=3, at s = (2/3, -5/7, 11/13):")
    lp = LinearPoint(("2/3", "-5/7", "11/13"), ("1/2", "3", "-4/5"))
    show("fixed-point sum", dtcoh_localization(3, 2, lp))
    show("closed form    ", dtcoh_closed(3, lp, 2))

    print("\nOn the plane s1+s2+s3 = 0 the series becomes M((-1)^r q)^r:")
    for r in (1, 2, 3):
        cy = LinearPoint((1, 2, -3), tuple(range(2, 2 + r)))
        show(f"r={r}", dtcoh_localization(r, 4, cy))

    print("\nr=2, one box: the framing-dependent piece adds up to a constant.")
    for v in [(1, 5), ("3/7", -2), (11, "1/9")]:
        print(f"  v = {v}: {framing_part_q1(LinearPoint((2, 3, 7), v))}")

    p = EvalPoint((2, 3, 5))
    print(f"\nr=1, [q^1] at t^(1/2) = (2,3,5): {dtk_localization(1, 1, p.with_whalf((7,)))[1]}")


if __name__ == "__main__":
    main()
