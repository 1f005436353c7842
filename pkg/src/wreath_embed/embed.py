"""The explicit embedding Psi = c1 * Lambda(f) (+) c2 * F(f, x) into l1.

Coordinates are sparse and exact. Lambda-block keys are ``("lam", site,
lamp_value)``; F-block keys are ``("cut", LiftedCut)``.

Both blocks are pointed at the identity: we store Lambda(f) - Lambda(e) and
F(a) - F(e). Differences between two images are unchanged, the identity
maps to the empty vector, and the group then acts on coordinates by pure
permutations (see :mod:`wreath_embed.equivariance`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cuts import CutMeasure
from .group_core import Group, GroupError, WreathElement
from .lift import LiftedCut, LiftedEnumeration, member, restrict_outside
from .wreath import TspInstance, lamplighter_length, support_diff, tsp_tour

HALF = Fraction(1, 2)


class SparseVector:
    """Finitely supported rational vector; zero entries are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coords=None):
        self._c = {k: Fraction(v) for k, v in (coords or {}).items() if v}

    @classmethod
    def _raw(cls, c: dict) -> SparseVector:
        v = cls.__new__(cls)
        v._c = c
        return v

    def __getitem__(self, key) -> Fraction:
        return self._c.get(key, Fraction(0))

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def items(self):
        return self._c.items()

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self._c == other._c

    def __repr__(self):
        return f"SparseVector({self._c!r})"

    def __add__(self, other: SparseVector) -> SparseVector:
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k, 0) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return SparseVector._raw(c)

    def __neg__(self) -> SparseVector:
        return SparseVector._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: SparseVector) -> SparseVector:
        return self + (-other)

    def scale(self, s) -> SparseVector:
        s = Fraction(s)
        if not s:
            return SparseVector()
        return SparseVector._raw({k: s * v for k, v in self._c.items()})

    def block(self, tag: str) -> SparseVector:
        return SparseVector._raw({k: v for k, v in self._c.items() if k[0] == tag})

    def l1(self) -> Fraction:
        return sum((abs(v) for v in self._c.values()), Fraction(0))


def l1_distance(u: SparseVector, v: SparseVector) -> Fraction:
    return (u - v).l1()


def direct_sum(*blocks: SparseVector) -> SparseVector:
    out: dict = {}
    for b in blocks:
        for k, v in b.items():
            if k in out:
                raise ValueError(f"blocks overlap at {k!r}")
            out[k] = v
    return SparseVector._raw(out)


@dataclass(frozen=True)
class EmbeddingConfig:
    """Exponent ``alpha`` of the base map, slack ``epsilon`` and target ``p``."""

    alpha: Fraction = Fraction(1)
    epsilon: Fraction = Fraction(0)
    p: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if not 0 <= self.epsilon < self.alpha:
            raise ValueError("epsilon must lie in [0, alpha)")
        if self.p < 1:
            raise ValueError("p must be at least 1")

    @classmethod
    def with_default_epsilon(cls, alpha, achieved: bool, p: float = 1.0) -> EmbeddingConfig:
        """epsilon = 0 when the base family attains alpha, else alpha / 10."""
        alpha = Fraction(alpha)
        return cls(alpha, Fraction(0) if achieved else alpha / 10, p)

    @property
    def exponent(self) -> Fraction:
        return self.alpha - self.epsilon

    @property
    def c1(self) -> Fraction:
        return self.exponent / (1 + self.exponent)

    @property
    def c2(self) -> Fraction:
        return 1 / (1 + self.exponent)


def lambda_coords(g: Group, a) -> SparseVector:
    """Lambda(f) - Lambda(e): +1/2 at (x, f(x)) and -1/2 at (x, e_G) per lit site.

    ``a`` may be a WreathElement or a bare lamp mapping.
    """
    lamps = a.lamps if isinstance(a, WreathElement) else dict(a).items()
    e = g.lamp.identity()
    c = {}
    for x, s in lamps:
        if s == e:
            continue
        c[("lam", x, s)] = HALF
        c[("lam", x, e)] = -HALF
    return SparseVector._raw(c)


def f_coords(enum: LiftedEnumeration, a: WreathElement) -> SparseVector:
    """Weighted indicator of the enumerated lifted cuts containing ``a``."""
    try:
        idx = enum.membership[a]
    except KeyError:
        raise ValueError(f"{a!r} is outside the enumerated population") from None
    return SparseVector._raw({("cut", enum.cuts[i][0]): enum.cuts[i][1] for i in idx})


def lifted_coords(g: Group, m: CutMeasure, a: WreathElement) -> SparseVector:
    """F(a) - F(e) over every lifted cut of ``m``; no window needed.

    Only base cuts separating supp(a) together with the cursor and the base
    identity can contain exactly one of ``a`` and the identity.
    """
    e_h = g.base.identity()
    pts = set(a.support)
    pts.update((a.cursor, e_h))
    c: dict = {}

    def put(key, w):
        v = c.get(key, 0) + w
        if v:
            c[key] = v
        else:
            c.pop(key, None)

    for B, w in m.separating_cuts(pts):
        in_a = B.contains(a.cursor)
        in_e = B.contains(e_h)
        cfg = restrict_outside(a, B) if in_a else None
        if in_a and in_e and not cfg:
            continue
        if in_a:
            put(("cut", LiftedCut(B, cfg)), w)
        if in_e:
            put(("cut", LiftedCut(B, frozenset())), -w)
    return SparseVector._raw(c)


def enumerated_pointed_coords(enum: LiftedEnumeration, a: WreathElement) -> SparseVector:
    """f_coords(a) minus the identity's indicator on the same enumerated cuts."""
    e = enum.group.identity()
    base = {("cut", c): w for c, w in enum.cuts if member(c, e)}
    return f_coords(enum, a) - SparseVector._raw(base)


def psi(g: Group, a: WreathElement, cfg: EmbeddingConfig, source) -> SparseVector:
    """c1 * Lambda-block (+) c2 * F-block.

    ``source`` is either a complement-closed :class:`CutMeasure` (intrinsic
    coordinates) or a :class:`LiftedEnumeration` (coordinates restricted to
    the enumerated cuts).
    """
    lam = lambda_coords(g, a).scale(cfg.c1)
    if isinstance(source, LiftedEnumeration):
        F = enumerated_pointed_coords(source, a)
    else:
        F = lifted_coords(g, source, a)
    return direct_sum(lam, F.scale(cfg.c2))


def psi_distance(g: Group, a, b, cfg: EmbeddingConfig, source) -> Fraction:
    return l1_distance(psi(g, a, cfg, source), psi(g, b, cfg, source))


def snowflake_distance(d1: float, p: float) -> float:
    """Distance after the L1 -> Lp transfer: d1 ** max(1/2, 1/p)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    if d1 < 0:
        raise ValueError("distances are nonnegative")
    return float(d1) ** max(0.5, 1.0 / p)


# -- the lower-bound chain -------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    psi_distance: Fraction
    weighted_sum: float  # c1 |supp| + c2 max d_H^(alpha-eps)
    geometric_mean: float  # max{(|supp| M)^beta, d_H(x,y)^(alpha-eps) / (1+alpha-eps)}
    tour_bound: float  # ((1 + |supp|) M)^beta
    distance_power: float  # d^beta
    distance: int
    tour: int
    tour_sum: int  # d_H(x,y) + 2 sum_z d_H(x,z)
    max_factor: float  # K with tour_bound <= K * geometric_mean
    chain_constant: float  # psi_distance >= chain_constant * distance_power
    steps: dict

    @property
    def quantities(self) -> tuple:
        return (self.weighted_sum, self.geometric_mean, self.tour_bound, self.distance_power)

    @property
    def ok(self) -> bool:
        return all(self.steps.values())


_REL = 1e-12


def _ge(x: float, y: float) -> bool:
    return x >= y - _REL * max(1.0, abs(y))


def chain_check(g: Group, a: WreathElement, b: WreathElement, cfg: EmbeddingConfig, source) -> ChainReport:
    """Evaluate every link of the compression lower bound for one pair.

    Links and their constants:

    * psi distance >= weighted sum (constant 1; the closed threshold measure
      gives d_mu = 2 d_H >= d_H^(alpha-eps) on integer distances)
    * weighted sum >= geometric mean (weighted AM-GM, constant 1)
    * tour bound <= K * geometric mean, K = max(2^beta, 1 + alpha - eps)
    * tour <= d_H(x,y) + 2 sum d_H(x,z) and d <= 3 (1 + |supp|) M

    When M = 0 (a single lamp change under the cursor) the tour bound is 0
    and the Lambda block alone carries the bound: weighted sum >= c1 * d.
    """
    base = g.base
    if not base.has_closed_metric:
        raise GroupError("chain_check needs a base group with a closed-form metric")
    diff = support_diff(g, a, b)
    x, y = a.cursor, b.cursor
    s = len(diff)
    dxy = base.dist_closed(x, y)
    dxz = [base.dist_closed(x, z) for z in diff]
    M = max([dxy] + dxz)
    ae = float(cfg.exponent)
    beta = float(cfg.c1)
    c1, c2 = float(cfg.c1), float(cfg.c2)

    q1 = c1 * s + c2 * max(t**ae for t in [dxy] + dxz)
    q2 = max((s * M) ** beta, dxy**ae / (1 + ae))
    q3 = ((1 + s) * M) ** beta
    d = lamplighter_length(g, a, b)
    q4 = d**beta
    tour = tsp_tour(TspInstance(x, diff, y, base.dist_closed))
    tour_sum = dxy + 2 * sum(dxz)
    K = max(2**beta, 1 + ae)
    kappa = min(1.0 / (K * 3**beta), c1)
    D = psi_distance(g, a, b, cfg, source)

    steps = {
        "psi_ge_weighted_sum": _ge(float(D), q1),
        "am_gm": _ge(q1, q2),
        "max_bound": _ge(K * q2, q3),
        "tour_triangle": tour <= tour_sum,
    }
    if M > 0:
        steps["tour_bound"] = d <= 3 * (1 + s) * M
    else:
        steps["tour_bound"] = d == s and _ge(q1, c1 * d)
    steps["overall"] = _ge(float(D), kappa * q4)
    return ChainReport(D, q1, q2, q3, q4, d, tour, tour_sum, K, kappa, steps)


# -- regression baselines ---------------------------------------------------------


def format_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_baselines(path, values: dict) -> None:
    """Flat ``key = value`` file, keys sorted; floats keep 12 significant digits."""
    lines = [f"{k} = {format_value(values[k])}" for k in sorted(values)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_baselines(path) -> dict:
    """Parse a baseline file; values come back as Fraction or float."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition("=")
        val = val.strip()
        exact = "/" in val or val.lstrip("-").isdigit()
        out[key.strip()] = Fraction(val) if exact else float(val)
    return out
