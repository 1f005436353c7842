"""Compare the tour-based word length against BFS on Cayley balls."""

import argparse
import time
from fractions import Fraction

from wreath_embed.grammar import parse_group
from wreath_embed.group_core import ball_lengths
from wreath_embed.wreath import lamplighter_length


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=["wr(C2,Z)", "wr(Z,Z)", "wr(C2,Z^2)", "wr(C3,Z)"])
    ap.add_argument("--radius", type=int, default=6)
    args = ap.parse_args()

    for text in args.groups:
        g = parse_group(text)
        t0 = time.perf_counter()
        lengths = ball_lengths(g, args.radius)
        e = g.identity()
        ratios = [Fraction(lamplighter_length(g, e, a), r) for a, r in lengths.items() if r]
        print(
            f"{str(g):<14} |ball| = {len(lengths):>6}  "
            f"ratio in [{min(ratios)}, {max(ratios)}]  {time.perf_counter() - t0:.2f}s"
        )


if __name__ == "__main__":
    main()
