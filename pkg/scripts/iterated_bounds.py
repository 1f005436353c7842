"""Print the L_p exponent lower bounds for G_1 = Z wr Z, G_{k+1} = Z wr G_k."""

import argparse
from fractions import Fraction

from wreath_embed.moduli import iterated_bound, thm11_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--p", type=Fraction, nargs="+", default=[Fraction(1), Fraction(2), Fraction(3)])
    args = ap.parse_args()

    header = "k  " + "  ".join(f"p={p}".rjust(8) for p in args.p)
    print(header)
    for k in range(1, args.k + 1):
        a1 = iterated_bound(k)
        # the L1 exponent transfers to L_p through the snowflake factor
        cells = [a1 * max(Fraction(1, 2), 1 / p) for p in args.p]
        print(f"{k:<2} " + "  ".join(str(c).rjust(8) for c in cells))
    print()
    print("Z wr (Z wr Z) in Hilbert space:", thm11_bound(1, 1, 2))


if __name__ == "__main__":
    main()
