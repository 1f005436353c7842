"""Finite-window action of the wreath product on embedding coordinates.

theta(f, x) moves a Lambda coordinate (z, s) to (xz, f(xz) s) and a lifted
cut E(B, c) to E(xB, (f . T_x c) restricted to the complement of xB). Both
are coordinate permutations, so theta is an l1 isometry, and the pointed
embedding satisfies Psi(ab) = theta(a) Psi(b) + Psi(a) exactly when the
base measure is translation invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cuts import CutMeasure, separates
from .embed import EmbeddingConfig, SparseVector, psi
from .group_core import Group, GroupError, WreathElement
from .lift import LiftedCut


class WindowEscape(GroupError):
    """A coordinate would leave the window under the action."""


@dataclass(frozen=True)
class ActionContext:
    group: Group
    measure: CutMeasure
    window: frozenset

    @classmethod
    def interval(cls, group: Group, measure: CutMeasure, lo: int, hi: int) -> ActionContext:
        return cls(group, measure, frozenset(range(lo, hi + 1)))

    def site_ok(self, z) -> bool:
        return z in self.window

    def cut_ok(self, c: LiftedCut) -> bool:
        return separates(c.base_cut, self.window) and all(z in self.window for z, _ in c.config)

    def shift_cut(self, h, c: LiftedCut) -> LiftedCut:
        """hE(B, f) = E(hB, T_h f)."""
        base = self.group.base
        cfg = frozenset((base.mul(h, z), v) for z, v in c.config)
        return LiftedCut(c.base_cut.translate(h), cfg)

    def recolor_cut(self, lamps: dict, c: LiftedCut) -> LiftedCut:
        """gE(B, f) = E(B, g|_{B^c} . f)."""
        lamp = self.group.lamp
        e = lamp.identity()
        cfg = dict(c.config)
        for z, v in lamps.items():
            if c.base_cut.contains(z):
                continue
            w = lamp.mul(v, cfg.get(z, e))
            if w == e:
                cfg.pop(z, None)
            else:
                cfg[z] = w
        return LiftedCut(c.base_cut, frozenset(cfg.items()))


def _image(actor: WreathElement, key, ctx: ActionContext):
    g = ctx.group
    x = actor.cursor
    if key[0] == "lam":
        _, z, s = key
        if not ctx.site_ok(z):
            raise WindowEscape(f"site {z!r} is outside the window")
        z2 = g.base.mul(x, z)
        if not ctx.site_ok(z2):
            raise WindowEscape(f"site {z!r} moves to {z2!r} outside the window")
        f = actor.lamp(z2, g.lamp.identity())
        return ("lam", z2, g.lamp.mul(f, s))
    c = key[1]
    if not ctx.cut_ok(c):
        raise WindowEscape(f"{c!r} is outside the window")
    c2 = ctx.recolor_cut(actor.lamp_map, ctx.shift_cut(x, c))
    if not ctx.cut_ok(c2):
        raise WindowEscape(f"{c!r} moves to {c2!r} outside the window")
    return ("cut", c2)


def theta_apply(actor: WreathElement, v: SparseVector, ctx: ActionContext) -> SparseVector:
    """Apply theta(actor); partial, raises WindowEscape instead of clipping."""
    ctx.group.check(actor)
    out = {}
    for key, val in v.items():
        out[_image(actor, key, ctx)] = val
    return SparseVector._raw(out)


@dataclass(frozen=True)
class CocycleResult:
    ok: bool
    residual: Fraction
    mismatches: tuple  # coordinates where the identity fails


def cocycle_check(a: WreathElement, b: WreathElement, cfg: EmbeddingConfig, ctx: ActionContext) -> CocycleResult:
    """Compare Psi(ab) with theta(a) Psi(b) + Psi(a) coordinate by coordinate."""
    g, m = ctx.group, ctx.measure
    ab = g.mul(a, b)
    for el in (a, b, ab):
        for z in {el.cursor} | el.support:
            if not ctx.site_ok(z):
                raise WindowEscape(f"{el!r} leaves the window")
    lhs = psi(g, ab, cfg, m)
    rhs = theta_apply(a, psi(g, b, cfg, m), ctx) + psi(g, a, cfg, m)
    for key in lhs:
        if key[0] == "cut" and not ctx.cut_ok(key[1]):
            raise WindowEscape(f"{key[1]!r} is outside the window")
    diff = lhs - rhs
    residual = max((abs(v) for _, v in diff.items()), default=Fraction(0))
    bad = tuple(sorted(diff, key=repr))
    return CocycleResult(not bad, residual, bad)


def measure_invariance_check(m: CutMeasure, h, window, base: Group) -> bool:
    """weight(hB) == weight(B) for every cut whose translate stays in the window.

    Checks translation by both h and h^-1 so cuts only present on one side
    are caught.
    """
    win = list(window)
    if m.family.kind == "explicit":
        cuts = [c for c, _ in m.family.weights if separates(c, win)]
    else:
        cuts = [c for c, _ in m.separating_cuts(win)]
    checked = 0
    for shift in (h, base.inv(h)):
        for B in cuts:
            hB = B.translate(shift)
            if not separates(hB, win):
                continue
            checked += 1
            if m.weight(hB) != m.weight(B):
                return False
    if cuts and not checked:
        raise ValueError(f"translation {h!r} moves every cut out of the window")
    return True


def invariance_counterexample(m: CutMeasure, h, window, base: Group):
    """First cut B (in cut order) with weight(hB) != weight(B), or None."""
    win = list(window)
    if m.family.kind == "explicit":
        cuts = [c for c, _ in m.family.weights if separates(c, win)]
    else:
        cuts = [c for c, _ in m.separating_cuts(win)]
    for shift in (h, base.inv(h)):
        for B in cuts:
            hB = B.translate(shift)
            if separates(hB, win) and m.weight(hB) != m.weight(B):
                return B, shift, m.weight(B), m.weight(hB)
    return None
