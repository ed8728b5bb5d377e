"""Dirac comb against the identity/DFT pair: the product bound is attained.

    python3 scripts/comb_equality.py --sizes 4 9 16 25 36
"""
import argparse

from frameuncertainty import check_hilbert_chain, check_product_bound, dft_pair, dirac_comb


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 9, 16, 25, 36, 49, 64])
    args = ap.parse_args()
    print(f"{'n':>4} {'lhs':>6} {'rhs':>20} {'slack':>10}  equality  chain")
    for n in args.sizes:
        ident, dft = dft_pair(n)
        comb = dirac_comb(n)
        r = check_product_bound(ident, dft, comb, "1")
        chain, amgm = check_hilbert_chain(ident, dft, comb)
        print(f"{n:>4} {r.lhs:>6g} {r.rhs:>20.17g} {r.slack:>10.2e}  {str(r.equality):>8}  "
              f"{chain.equality and amgm.equality}")


if __name__ == "__main__":
    main()
