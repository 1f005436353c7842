"""Batch front-end: ``wreath-embed {ball,embed,verify,bounds,compression}``.

Every subcommand is deterministic given its flags and seed. Exit status is
0 when all checks pass, 1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import estimate
from .cuts import CutMeasure, Threshold
from .embed import EmbeddingConfig, chain_check, l1_distance, psi
from .equivariance import ActionContext, cocycle_check, invariance_counterexample, measure_invariance_check
from .grammar import format_group, parse_group
from .group_core import Group, GroupError, ball_lengths, order_key
from .lift import LiftedEnumeration, enumerate_lifted, lifted_distance_exact, lifted_separation
from . import moduli as mod


@dataclass
class ExperimentConfig:
    group: Group
    radius: int = 3
    window: tuple | None = None
    alpha: Fraction = Fraction(1)
    eps: Fraction = Fraction(0)
    p: float = 1.0
    seed: int = 0
    steps: int | None = None
    count: int | None = None
    out: Path | None = None
    fmt: str = "json"
    extra: dict = field(default_factory=dict)

    @property
    def embedding(self) -> EmbeddingConfig:
        return EmbeddingConfig(self.alpha, self.eps, self.p)


def rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def fmt_float(v) -> str:
    return f"{float(v):.12g}"


def parse_window(text: str) -> tuple:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like LO:HI")
    lo, hi = int(lo), int(hi)
    if lo >= hi:
        raise argparse.ArgumentTypeError("window needs LO < HI")
    return lo, hi


def window_points(g: Group, window: tuple) -> list:
    """Integer interval for base Z, the box [LO, HI]^d for base Z^d."""
    base = g.base if g.is_wreath else g
    lo, hi = window
    if base.kind == "Z":
        return list(range(lo, hi + 1))
    if base.kind == "Zd":
        import itertools

        return [tuple(v) for v in itertools.product(range(lo, hi + 1), repeat=base.d)]
    raise GroupError(f"windows are only defined over Z or Z^d bases, not {format_group(base)}")


def _emit(cfg: ExperimentConfig, payload: dict, csv_header: list, csv_rows: list) -> None:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text)


# -- subcommands -------------------------------------------------------------


def cmd_ball(cfg: ExperimentConfig) -> int:
    lengths = ball_lengths(cfg.group, cfg.radius)
    elems = sorted(lengths, key=lambda x: (lengths[x], order_key(x)))
    rows = [[repr(x), lengths[x]] for x in elems]
    payload = {
        "group": format_group(cfg.group),
        "radius": cfg.radius,
        "size": len(rows),
        "rows": [{"element": e, "length": n} for e, n in rows],
    }
    _emit(cfg, payload, ["element", "length"], rows)
    return 0


def _embedding_source(cfg: ExperimentConfig, population):
    g = cfg.group
    m = estimate.default_measure(g)
    if cfg.window is None:
        return m
    return enumerate_lifted(g, m, population, window_points(g, cfg.window))


def embed_population(cfg: ExperimentConfig) -> tuple[list, list, list]:
    """Population, Psi vectors and the pairwise l1 distance matrix."""
    g = cfg.group
    if not g.is_wreath:
        raise GroupError("embed needs a wreath product over Z or Z^d")
    lengths = ball_lengths(g, cfg.radius)
    pop = sorted(lengths, key=lambda x: (lengths[x], order_key(x)))
    source = _embedding_source(cfg, pop)
    vecs = [psi(g, a, cfg.embedding, source) for a in pop]
    n = len(pop)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            mat[i][j] = mat[j][i] = l1_distance(vecs[i], vecs[j])
    return pop, vecs, mat


def cmd_embed(cfg: ExperimentConfig) -> int:
    pop, vecs, mat = embed_population(cfg)
    vec_json = [
        {
            "element": repr(a),
            "coords": [
                {"key": repr(k), "value": rational(v)}
                for k, v in sorted(vec.items(), key=lambda kv: repr(kv[0]))
            ],
        }
        for a, vec in zip(pop, vecs)
    ]
    payload = {
        "group": format_group(cfg.group),
        "radius": cfg.radius,
        "alpha": rational(cfg.alpha),
        "epsilon": rational(cfg.eps),
        "elements": [repr(a) for a in pop],
        "vectors": vec_json,
        "matrix": [[rational(v) for v in row] for row in mat],
    }
    if cfg.out is not None and cfg.fmt == "csv":
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "vectors.json").write_text(json.dumps(vec_json, indent=2) + "\n")
        with open(out / "matrix.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([""] + [repr(a) for a in pop])
            for a, row in zip(pop, mat):
                w.writerow([repr(a)] + [fmt_float(v) for v in row])
        return 0
    _emit(cfg, payload, [], [])
    return 0


def _perturbed_threshold(window: tuple) -> CutMeasure:
    """Closed uniform threshold measure with one weight tripled."""
    lo, hi = window
    reach = 3 * (hi - lo)
    weights = {Threshold(t, up): 1 for t in range(lo - reach, hi + reach + 1) for up in (True, False)}
    weights[Threshold((lo + hi) // 2 + 1, True)] = 3
    return CutMeasure.explicit(weights)


def verify_lift_sandwich(cfg: ExperimentConfig) -> dict:
    g = cfg.group
    window = cfg.window or (-2 * cfg.radius, 2 * cfg.radius)
    m = CutMeasure.uniform_threshold(closed=True)
    pop = sorted(ball_lengths(g, cfg.radius), key=order_key)
    em = _perturbed_threshold(window) if cfg.extra.get("inject_fault") else m
    enum = enumerate_lifted(g, em, pop, window_points(g, window))
    cases = 0
    for i, a in enumerate(pop):
        for b in pop[i + 1 :]:
            cases += 1
            sep = lifted_separation(g, m, a, b)
            exact = lifted_distance_exact(enum, a, b)
            if not sep <= exact <= 2 * sep:
                sep_cuts = _separating_lifted(enum, a, b)
                return {
                    "passed": False,
                    "cases": cases,
                    "counterexample": {
                        "a": repr(a),
                        "b": repr(b),
                        "lifted_separation": rational(sep),
                        "lifted_distance_exact": rational(exact),
                        "separating_cuts": sep_cuts,
                    },
                }
    return {"passed": True, "cases": cases}


def _separating_lifted(enum: LiftedEnumeration, a, b) -> list:
    idx = enum.membership[a] ^ enum.membership[b]
    return [f"{enum.cuts[i][0]!r} weight {rational(enum.cuts[i][1])}" for i in sorted(idx)]


def verify_cocycle(cfg: ExperimentConfig) -> dict:
    g = cfg.group
    window = cfg.window or (-12, 12)
    base = g.base
    if cfg.extra.get("inject_fault"):
        m = _perturbed_threshold(window)
    else:
        m = estimate.default_measure(g)
    ctx = ActionContext(g, m, frozenset(window_points(g, window)))
    pop = sorted(ball_lengths(g, cfg.radius), key=order_key)
    emb = cfg.embedding
    cases = 0
    for a in pop:
        for b in pop:
            cases += 1
            res = cocycle_check(a, b, emb, ctx)
            if not res.ok:
                return {
                    "passed": False,
                    "cases": cases,
                    "counterexample": {
                        "a": repr(a),
                        "b": repr(b),
                        "residual": rational(res.residual),
                        "coordinates": [repr(k) for k in res.mismatches[:10]],
                    },
                }
    win = window_points(g, window)
    shifts = [h for h in ball_lengths(base, 3) if h != base.identity()]
    for h in shifts:
        if not measure_invariance_check(m, h, win, base):
            B, shift, w0, w1 = invariance_counterexample(m, h, win, base)
            return {
                "passed": False,
                "cases": cases,
                "counterexample": {"cut": repr(B), "shift": repr(shift), "weight": rational(w0), "translated_weight": rational(w1)},
            }
    return {"passed": True, "cases": cases, "translations": len(shifts)}


def moduli_fixtures() -> dict:
    return {
        "identity": (mod.Modulus.linear(1), mod.Modulus.linear(1)),
        "square": (mod.Modulus.power(2), mod.Modulus.linear(2)),
        "table": (
            mod.Modulus.table([0, 1, 3, 4, 5, 6, 9, 10, 11, 12, 15]),
            mod.Modulus.table([0, 2, 3, 4, 7, 8, 9, 10, 12], "table2"),
        ),
        "linear-half": (mod.Modulus.linear(Fraction(1, 2)), mod.Modulus.linear(3)),
        "cubic": (mod.Modulus.linear(5), mod.Modulus.power(3)),
    }


def verify_moduli(cfg: ExperimentConfig) -> dict:
    tmax = cfg.extra.get("tmax", 18)
    cases = 0
    for name, (xi, tau) in moduli_fixtures().items():
        eta = mod.eta1_table(xi, tau, tmax)
        for t in range(tmax + 1):
            cases += 1
            for label, got, want in (
                ("partition_min", mod.partition_min(tau, t), mod.partition_min_bruteforce(tau, t)),
                ("eta1", eta[t], mod.eta1_bruteforce(xi, tau, t)),
            ):
                if got != want:
                    return {"passed": False, "cases": cases, "counterexample": {"fixture": name, "check": label, "t": t, "dp": str(got), "bruteforce": str(want)}}
        for t in range(tmax):
            if not eta[t + 1] > eta[t]:
                return {"passed": False, "cases": cases, "counterexample": {"fixture": name, "check": "eta1 increasing", "t": t}}
        for M in (2, 5, 10):
            N, val = mod.unboundedness_witness(xi, tau, M)
            if not val > M:
                return {"passed": False, "cases": cases, "counterexample": {"fixture": name, "check": "unbounded", "M": M, "N": N, "eta1(MN)": str(val)}}
    return {"passed": True, "cases": cases}


def verify_chain(cfg: ExperimentConfig) -> dict:
    g = cfg.group
    m = estimate.default_measure(g)
    pop = sorted(ball_lengths(g, cfg.radius), key=order_key)
    cases = 0
    for i, a in enumerate(pop):
        for b in pop[i + 1 :]:
            cases += 1
            rep = chain_check(g, a, b, cfg.embedding, m)
            if not rep.ok:
                failed = [k for k, v in rep.steps.items() if not v]
                return {"passed": False, "cases": cases, "counterexample": {"a": repr(a), "b": repr(b), "failed_steps": failed}}
    return {"passed": True, "cases": cases}


VERIFIERS = {
    "lift-sandwich": verify_lift_sandwich,
    "cocycle": verify_cocycle,
    "moduli": verify_moduli,
    "chain": verify_chain,
}


def cmd_verify(cfg: ExperimentConfig) -> int:
    which = cfg.extra["which"]
    report = {"check": which, "group": format_group(cfg.group), **VERIFIERS[which](cfg)}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text)
    if not report["passed"]:
        print(f"FAIL {which}: {json.dumps(report['counterexample'], sort_keys=True)}", file=sys.stderr)
        return 1
    return 0


def bounds_table(alpha_g, alpha_h, p, k: int) -> dict:
    return {
        "alpha_g": rational(alpha_g),
        "alpha_h": rational(alpha_h),
        "p": str(Fraction(p)),
        "thm11_bound": rational(mod.thm11_bound(alpha_g, alpha_h, p)),
        "iterated": [{"k": j, "bound": rational(mod.iterated_bound(j))} for j in range(1, k + 1)],
    }


def cmd_bounds(cfg: ExperimentConfig) -> int:
    t = bounds_table(cfg.extra["alpha_g"], cfg.extra["alpha_h"], Fraction(str(cfg.p)), cfg.extra["k"])
    rows = [["thm11", "", t["thm11_bound"], fmt_float(Fraction(t["thm11_bound"]))]]
    rows += [["iterated", r["k"], r["bound"], fmt_float(Fraction(r["bound"]))] for r in t["iterated"]]
    _emit(cfg, t, ["quantity", "k", "exact", "value"], rows)
    return 0


def compression_dataset(cfg: ExperimentConfig) -> estimate.PairDataset:
    if "synthetic" in cfg.extra and cfg.extra["synthetic"] is not None:
        ds = estimate.synthetic_power_law(cfg.extra["synthetic"])
    elif cfg.steps is not None:
        policy = estimate.RandomWalk(cfg.steps, cfg.count or 200, cfg.seed)
        ds = estimate.sample_pairs(cfg.group, policy, cfg.embedding)
    else:
        ds = estimate.sample_pairs(cfg.group, estimate.ExhaustiveBall(cfg.radius), cfg.embedding)
    if cfg.p != 1:
        ds = estimate.snowflake(ds, cfg.p)
    return ds


def cmd_compression(cfg: ExperimentConfig) -> int:
    ds = compression_dataset(cfg)
    alpha, kappa = estimate.fit_compression(ds)
    rep = estimate.distortion_report(ds)
    result = {
        "group": format_group(cfg.group),
        "rows": len(ds),
        "alpha_hat": float(f"{alpha:.12g}"),
        "kappa_hat": float(f"{kappa:.12g}"),
        "max_expansion": float(f"{rep.max_expansion:.12g}"),
        "min_compression": float(f"{rep.min_compression:.12g}"),
        "lipschitz": float(f"{rep.lipschitz:.12g}"),
    }
    if cfg.out is not None:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        ds.to_csv(out / "pairs.csv")
        ds.metadata.update({k: v for k, v in result.items() if k != "group"})
        ds.write_sidecar(out / "pairs.meta")
    sys.stdout.write(json.dumps(result, indent=2, sort_keys=True) + "\n")
    return 0


COMMANDS = {
    "ball": cmd_ball,
    "embed": cmd_embed,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "compression": cmd_compression,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="wr(C2,Z)", help="group string, e.g. Z, Z^2, C5, wr(C2,Z)")
    common.add_argument("--radius", type=int, default=3)
    common.add_argument("--window", type=parse_window, default=None, help="LO:HI")
    common.add_argument("--alpha", type=Fraction, default=Fraction(1))
    common.add_argument("--eps", type=Fraction, default=Fraction(0))
    common.add_argument("--p", type=float, default=1.0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--format", choices=("csv", "json"), default="json")

    parser = argparse.ArgumentParser(prog="wreath-embed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ball", parents=[common], help="list a Cayley ball with word lengths")
    sub.add_parser("embed", parents=[common], help="Psi vectors and pairwise distances on a ball")
    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("--which", choices=sorted(VERIFIERS), required=True)
    v.add_argument("--tmax", type=int, default=18)
    v.add_argument("--inject-fault", action="store_true", help="perturb one cut weight")
    b = sub.add_parser("bounds", parents=[common], help="exponent lower bounds")
    b.add_argument("--alpha-g", type=Fraction, default=Fraction(1))
    b.add_argument("--alpha-h", type=Fraction, default=Fraction(1))
    b.add_argument("--k", type=int, default=10)
    c = sub.add_parser("compression", parents=[common], help="fit the compression exponent")
    c.add_argument("--steps", type=int, default=None)
    c.add_argument("--count", type=int, default=None)
    c.add_argument("--synthetic", type=float, default=None, help="fit a synthetic D = d^EXP dataset")
    return parser


def config_from_args(args) -> ExperimentConfig:
    extra = {
        k: getattr(args, k)
        for k in ("which", "tmax", "inject_fault", "alpha_g", "alpha_h", "k", "synthetic")
        if hasattr(args, k)
    }
    return ExperimentConfig(
        group=parse_group(args.group),
        radius=args.radius,
        window=args.window,
        alpha=args.alpha,
        eps=args.eps,
        p=args.p,
        seed=args.seed,
        steps=getattr(args, "steps", None),
        count=getattr(args, "count", None),
        out=args.out,
        fmt=args.format,
        extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except (GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
