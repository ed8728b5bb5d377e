"""Violation counts of every check over seeded random reconstructing pairs.

Random reconstructing pairs satisfy the product and transfer bounds.  The
one-sided and mixed-norm bounds additionally need isometric analysis maps,
so with ``--family random`` they are expected to show violations.  With
``--family parseval`` (square unitary pairs, l^2 isometries) the p=2 mixed
bound holds as well.

    python3 scripts/validity_sweep.py --pairs 500 --vectors 500
"""
import argparse
import time

import numpy as np

from frameuncertainty import random_parseval, random_reconstructing
from frameuncertainty.generators import seed_stream
from frameuncertainty.uncertainty import CHECK_TOL, batch_bounds


def sample(f_sys, rng, k):
    n = f_sys.dim
    X = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    mask = rng.random((k, n)).argsort(axis=1) < rng.integers(1, n + 1, k)[:, None]
    a, b = k // 3, 2 * k // 3
    X[a:b] *= mask[a:b]
    X[b:] = (X[b:] * mask[b:]) @ f_sys.synthesis_matrix().T
    if f_sys.field == "real":
        X = X.real
    X[~X.any(axis=1), 0] = 1.0
    return X


def build(family, n, field, rng):
    if family == "parseval":
        return random_parseval(n, n, seed=0, field=field, rng=rng)
    return random_reconstructing(n, seed=0, field=field, rng=rng)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=500)
    ap.add_argument("--vectors", type=int, default=500)
    ap.add_argument("--nmin", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--family", choices=["random", "parseval"], default="random")
    args = ap.parse_args()

    t0 = time.perf_counter()
    totals = {}
    for i, ss in enumerate(seed_stream(args.seed, args.pairs)):
        rng = np.random.default_rng(ss)
        n = int(rng.integers(args.nmin, args.nmax + 1))
        field = "complex" if i % 2 else "real"
        f_sys, g_sys = build(args.family, n, field, rng), build(args.family, n, field, rng)
        res = batch_bounds(f_sys, g_sys, sample(f_sys, rng, args.vectors))
        for key, v in res.violation_counts(CHECK_TOL).items():
            totals[key] = totals.get(key, 0) + v
    total = args.pairs * args.vectors
    print(f"{args.pairs} pairs x {args.vectors} vectors ({args.family}), "
          f"{time.perf_counter() - t0:.1f}s")
    for key in sorted(totals):
        print(f"  {key:<18} {totals[key]:>7} / {total}")


if __name__ == "__main__":
    main()
