"""Exact minimum support product versus the coherence lower bound.

Prints the distribution of minimum / bound over seeded random pairs and the
identity/DFT pair, whose ratio is 1 whenever n is small enough to enumerate.

    python3 scripts/oracle_tightness.py --pairs 200
"""
import argparse
import time

import numpy as np

from frameuncertainty import dft_pair, min_support_product, random_reconstructing
from frameuncertainty.generators import seed_stream


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=777)
    args = ap.parse_args()

    t0 = time.perf_counter()
    by_n = {}
    for i, ss in enumerate(seed_stream(args.seed, args.pairs)):
        rng = np.random.default_rng(ss)
        n = 3 + i % 4
        f_sys = random_reconstructing(n, seed=0, field="real", rng=rng)
        g_sys = random_reconstructing(n, seed=0, field="real", rng=rng)
        res = min_support_product(f_sys, g_sys)
        by_n.setdefault(n, []).append((res.minimum, res.ratio))
    print(f"random pairs ({time.perf_counter() - t0:.1f}s)")
    print(f"{'n':>3} {'pairs':>6} {'min product':>12} {'min ratio':>10} {'median ratio':>13}")
    for n in sorted(by_n):
        mins, ratios = np.array(by_n[n]).T
        print(f"{n:>3} {len(mins):>6} {mins.min():>12g} {ratios.min():>10.3f} "
              f"{np.median(ratios):>13.3f}")
    print("identity/DFT")
    for n in range(2, 9):
        res = min_support_product(*dft_pair(n))
        print(f"{n:>3} minimum={res.minimum:g} bound={res.bound:.6g} ratio={res.ratio:.6g}")


if __name__ == "__main__":
    main()
