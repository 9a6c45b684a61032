"""Elliptic series at roots of unity, the motivic product and a toric example.

Run: python3 demos/elliptic_and_toric.py
"""

import random

from quotdt.dt import elliptic_example_q1, restriction_point, dtell_localization
from quotdt.series import dtell_closed, dtmot_closed
from quotdt.toric import chern_integral_sampled, fixture_path, global_dt, load_toric


def main():
    print("r=3, one box, (t1 t2 t3)^(1/2) = zeta_6^k, coefficient as a p-series to p^4:")
    for k in range(6):
        coeffs = elliptic_example_q1(k, 4).coeffs
        print(f"  k={k}: {[str(c) for c in coeffs]}")

    print("\nr=2 restricted to (t1 t2 t3)^(1/2) = zeta_4 (k=1), q to order 3, p to order 3:")
    pt = restriction_point(2, 1, random.Random(1))
    series = dtell_localization(2, 3, 3, pt)
    for n, c in enumerate(series.coeffs):
        print(f"  q^{n}: {[str(x) for x in c.coeffs]}")
    print(f"  closed form: {[str(c) for c in dtell_closed(2, 1, 3).coeffs]}")

    print("\nMotivic series, r=2, coefficients as Laurent polynomials in L^(1/2):")
    for n, c in enumerate(dtmot_closed(2, 2).coeffs):
        print(f"  q^{n}: {c}")

    print("\nProjective 3-space from its four fixed charts:")
    p3 = load_toric(fixture_path("p3"))
    print(f"  integral of c3(T (x) K) = {chern_integral_sampled(p3)}")
    for r in (1, 2):
        print(f"  r={r}: {[str(c) for c in global_dt(p3, r, 3).coeffs]}")


if __name__ == "__main__":
    main()
