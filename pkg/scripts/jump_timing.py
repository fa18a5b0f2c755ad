"""Time c_N mod p by window doubling against a linear scan, for growing N."""

import argparse
import time

from g2period.presets import A058231_SEED
from g2period.sequence import Jumper, terms_mod_p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=397)
    ap.add_argument("--scan-max", type=int, default=10**6)
    args = ap.parse_args()

    p = args.prime
    jump = Jumper(A058231_SEED, p)
    for e in range(3, 19, 3):
        N = 10**e
        t0 = time.perf_counter()
        val = jump.term(N)
        tj = time.perf_counter() - t0
        line = f"N=10^{e:<2d} c_N mod {p} = {val:4d}  jump {tj * 1e3:8.2f} ms"
        if N <= args.scan_max:
            t0 = time.perf_counter()
            assert terms_mod_p(A058231_SEED, p, N)[N] == val
            line += f"  scan {(time.perf_counter() - t0) * 1e3:9.1f} ms"
        print(line)


if __name__ == "__main__":
    main()
