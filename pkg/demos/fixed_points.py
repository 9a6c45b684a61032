"""Walk through the fixed locus: colored plane partitions and their tangent characters.

Run: python3 demos/fixed_points.py
"""

from quotdt import enumerate_colored, tvir
from quotdt.characters import CY, bar
from quotdt.series import macmahon


def main():
    print("Number of r-colored plane partitions of size n, next to [q^n] M(q)^r:")
    for r in (1, 2, 3):
        counts = [sum(1 for _ in enumerate_colored(r, n)) for n in range(5)]
        target = [int(c) for c in macmahon(r, 0, 4).coeffs]
        print(f"  r={r}: {counts}   M(q)^{r}: {target}")

    print("\nTwo colors, one box in the first color:")
    P = next(iter(enumerate_colored(2, 1)))
    T = tvir(P)
    print(f"  fixed point {P}")
    print(f"  T^vir = {T}")
    print(f"  rank {T.rank}, constant term {T.constant_term()}")
    # T + t^-1 bar(T) vanishes identically
    print(f"  T + bar(T)/(t1 t2 t3) = {T + bar(T) * CY.inverse()}")

    print("\nTwisting the framing by lambda = (1, t1):")
    print(f"  {tvir(P, [(0, 0, 0), (1, 0, 0)])}")


if __name__ == "__main__":
    main()
