"""Distribution of the period ratio d = Per/ord for the built-in curve.

    python scripts/d_statistics.py [--pmax 1000] [--jobs 4]
"""

import argparse
from fractions import Fraction

from g2period.periodicity import d_statistics
from g2period.presets import A058231_CURVE, A058231_POINT, A058231_SEED


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=400)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    st = d_statistics(A058231_CURVE, A058231_POINT, A058231_SEED, args.pmax, jobs=args.jobs)
    n = len(st["good_primes"])
    print(f"good primes <= {args.pmax}: {n}")
    print(f"d | p-1 at every good prime: {st['d_divides_p_minus_1']}")
    print(f"d = 1:     {st['d_equals_1']}")
    print(f"d = p - 1: {len(st['d_equals_p_minus_1'])} primes")
    print(f"excluded primes with a value of d: {st['excluded_with_d']}")
    print("d/(p-1)   count   share")
    for k, v in st["histogram"].items():
        print(f"{str(Fraction(k)):>7} {v:7d} {v / n:7.1%}")


if __name__ == "__main__":
    main()
