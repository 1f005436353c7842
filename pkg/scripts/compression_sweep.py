"""Fit the compression exponent of Psi on growing balls of C2 wr Z.

Writes one pairs.csv / pairs.meta per radius under --out and prints a
summary table. The asymptotic exponent for alpha = 1 is 1/2; desk-scale
balls sit well above it because short pairs dominate the envelope.
"""

import argparse
from pathlib import Path

from wreath_embed.embed import EmbeddingConfig
from wreath_embed.estimate import ExhaustiveBall, distortion_report, fit_compression, sample_pairs
from wreath_embed.grammar import parse_group


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="wr(C2,Z)")
    ap.add_argument("--radii", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--alpha", default="1")
    ap.add_argument("--eps", default="0")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()

    g = parse_group(args.group)
    cfg = EmbeddingConfig(args.alpha, args.eps)
    print(f"group {g}, target exponent {float(cfg.c1):.3f}")
    print(f"{'r':>3} {'pairs':>7} {'alpha_hat':>10} {'kappa_hat':>10} {'lipschitz':>10}")
    for r in args.radii:
        ds = sample_pairs(g, ExhaustiveBall(r), cfg)
        alpha, kappa = fit_compression(ds)
        rep = distortion_report(ds)
        print(f"{r:>3} {len(ds):>7} {alpha:>10.4f} {kappa:>10.4f} {rep.lipschitz:>10.4f}")
        if args.out:
            d = args.out / f"r{r}"
            d.mkdir(parents=True, exist_ok=True)
            ds.metadata.update(alpha_hat=alpha, kappa_hat=kappa)
            ds.to_csv(d / "pairs.csv")
            ds.write_sidecar(d / "pairs.meta")


if __name__ == "__main__":
    main()
