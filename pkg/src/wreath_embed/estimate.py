"""Empirical compression exponents and distortion summaries over sampled pairs.

This is the only module that uses floating point.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cuts import CutMeasure, cut_pseudometric
from .embed import EmbeddingConfig, l1_distance, psi, snowflake_distance
from .group_core import BudgetExceeded, Group, GroupError, ball, budget, order_key
from .wreath import lamplighter_length


@dataclass(frozen=True)
class ExhaustiveBall:
    radius: int


@dataclass(frozen=True)
class RandomWalk:
    steps: int
    count: int
    seed: int


@dataclass
class PairDataset:
    """Rows of (source distance d > 0, embedded distance D, src id, dst id)."""

    rows: list
    elements: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rows)

    @property
    def d(self) -> np.ndarray:
        return np.array([r[0] for r in self.rows], dtype=float)

    @property
    def D(self) -> np.ndarray:
        return np.array([r[1] for r in self.rows], dtype=float)

    def map_embedded(self, fn, **meta) -> PairDataset:
        rows = [(d, fn(D), i, j) for d, D, i, j in self.rows]
        return PairDataset(rows, self.elements, {**self.metadata, **meta})

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["d", "D", "src_id", "dst_id"])
            for d, D, i, j in self.rows:
                w.writerow([f"{float(d):.12g}", f"{float(D):.12g}", i, j])

    def write_sidecar(self, path) -> None:
        with open(path, "w") as fh:
            for k in sorted(self.metadata):
                fh.write(f"{k} = {self.metadata[k]}\n")

    @classmethod
    def from_csv(cls, path) -> PairDataset:
        with open(path, newline="") as fh:
            rows = [
                (float(r["d"]), float(r["D"]), int(r["src_id"]), int(r["dst_id"]))
                for r in csv.DictReader(fh)
            ]
        return cls(rows)


def default_measure(g: Group) -> CutMeasure:
    base = g.base if g.is_wreath else g
    if base.kind == "Z":
        return CutMeasure.uniform_threshold(closed=g.is_wreath)
    if base.kind == "Zd":
        return CutMeasure.uniform_halfspace(base.d, closed=g.is_wreath)
    raise GroupError(f"no canonical cut family for {base}")


def embedder(g: Group, cfg: EmbeddingConfig | None = None, measure: CutMeasure | None = None):
    """(source_distance, embedded_distance) callables for descriptor ``g``."""
    if g.kind == "C":
        return g.dist_closed, lambda a, b: float(g.dist_closed(a, b))
    m = measure or default_measure(g)
    if not g.is_wreath:
        return g.dist_closed, lambda a, b: float(cut_pseudometric(m, a, b))
    cfg = cfg or EmbeddingConfig()
    cache: dict = {}

    def vec(a):
        v = cache.get(a)
        if v is None:
            v = cache[a] = psi(g, a, cfg, m)
        return v

    return (lambda a, b: lamplighter_length(g, a, b)), (lambda a, b: float(l1_distance(vec(a), vec(b))))


def _walk_elements(g: Group, policy: RandomWalk) -> list:
    rng = random.Random(policy.seed)
    gens = g.generators()
    out = []
    for _ in range(2 * policy.count):
        x = g.identity()
        for _ in range(policy.steps):
            x = g.mul(x, rng.choice(gens))
        out.append(x)
    return out


def sample_pairs(g: Group, policy, cfg: EmbeddingConfig | None = None, measure: CutMeasure | None = None) -> PairDataset:
    dist, emb = embedder(g, cfg, measure)
    meta = {"group": str(g), "policy": repr(policy)}
    if cfg is not None:
        meta.update(alpha=cfg.alpha, epsilon=cfg.epsilon, p=cfg.p)
    if isinstance(policy, ExhaustiveBall):
        elems = ball(g, policy.radius)
        n = len(elems)
        if n * (n - 1) // 2 > budget():
            raise BudgetExceeded(f"{n * (n - 1) // 2} pairs exceed budget {budget()}")
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif isinstance(policy, RandomWalk):
        if policy.count > budget():
            raise BudgetExceeded("walk count exceeds budget")
        walked = _walk_elements(g, policy)
        index: dict = {}
        elems = []
        for x in walked:
            if x not in index:
                index[x] = len(elems)
                elems.append(x)
        pairs = [(index[walked[2 * k]], index[walked[2 * k + 1]]) for k in range(policy.count)]
    else:
        raise TypeError(f"unknown sampling policy {policy!r}")
    rows = []
    for i, j in pairs:
        d = dist(elems[i], elems[j])
        if d > 0:
            rows.append((d, emb(elems[i], elems[j]), i, j))
    return PairDataset(rows, elems, meta)


def synthetic_power_law(exponent: float, upto: int = 64, scale: float = 1.0) -> PairDataset:
    """D = scale * d^exponent exactly, for d = 1..upto."""
    rows = [(d, scale * float(d) ** exponent, 0, d) for d in range(1, upto + 1)]
    return PairDataset(rows, metadata={"synthetic_exponent": exponent, "scale": scale})


def snowflake(ds: PairDataset, p: float) -> PairDataset:
    """Push embedded distances through the L1 -> Lp transfer."""
    return ds.map_embedded(lambda D: snowflake_distance(D, p), p=p)


def lower_envelope(ds: PairDataset) -> tuple[np.ndarray, np.ndarray]:
    env: dict = {}
    for d, D, _, _ in ds.rows:
        if d not in env or D < env[d]:
            env[d] = D
    ds_ = sorted(env)
    return np.array(ds_, dtype=float), np.array([env[d] for d in ds_], dtype=float)


def fit_compression(ds: PairDataset) -> tuple[float, float]:
    """Slope of log D_min(d) against log d, and the largest kappa with D >= kappa d^alpha."""
    if not ds.rows:
        raise ValueError("empty dataset")
    d, Dmin = lower_envelope(ds)
    if len(d) < 2:
        raise ValueError("need at least two distinct source distances")
    if np.any(d <= 0) or np.any(Dmin <= 0):
        raise ValueError("envelope has nonpositive values; the embedding collapses a pair")
    slope, intercept = np.polyfit(np.log(d), np.log(Dmin), 1)
    alpha = float(slope)
    kappa = min(math.exp(intercept), float(np.min(ds.D / ds.d**alpha)))
    return alpha, kappa


def envelope_violations(ds: PairDataset, alpha: float, kappa: float, rel: float = 1e-12) -> list:
    return [r for r in ds.rows if r[1] < kappa * r[0] ** alpha * (1 - rel)]


class DistortionReport(NamedTuple):
    max_expansion: float
    min_compression: float
    lipschitz: float


def distortion_report(ds: PairDataset) -> DistortionReport:
    """(max D/d, min D/d, max D/d over generator steps d == 1)."""
    if not ds.rows:
        raise ValueError("empty dataset")
    ratios = ds.D / ds.d
    steps = ratios[ds.d == 1]
    lip = float(steps.max()) if steps.size else float(ratios.max())
    return DistortionReport(float(ratios.max()), float(ratios.min()), lip)


def element_label(x) -> str:
    return repr(x)


def sort_elements(elems) -> list:
    return sorted(elems, key=order_key)
