"""Cut families on base groups, cut measures and separation measures.

All weights are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .group_core import BudgetExceeded, Group, order_key, budget


# -- cuts -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Threshold:
    """{n >= t} when ``up``, else its complement {n < t}."""

    t: int
    up: bool = True

    def contains(self, x) -> bool:
        return (x >= self.t) == self.up

    def complement(self) -> Threshold:
        return Threshold(self.t, not self.up)

    def translate(self, h) -> Threshold:
        return Threshold(self.t + h, self.up)


@dataclass(frozen=True, order=True)
class Halfspace:
    """{v : v[axis] >= t} when ``up``, else its complement."""

    axis: int
    t: int
    up: bool = True

    def contains(self, x) -> bool:
        return (x[self.axis] >= self.t) == self.up

    def complement(self) -> Halfspace:
        return Halfspace(self.axis, self.t, not self.up)

    def translate(self, h) -> Halfspace:
        return Halfspace(self.axis, self.t + h[self.axis], self.up)


@dataclass(frozen=True)
class FiniteCut:
    """A finite set of group elements, or its complement when ``co``."""

    members: frozenset
    co: bool = False
    group: Group | None = field(default=None, compare=False, hash=False)

    def contains(self, x) -> bool:
        return (x in self.members) != self.co

    def complement(self) -> FiniteCut:
        return FiniteCut(self.members, not self.co, self.group)

    def translate(self, h) -> FiniteCut:
        if self.group is None:
            raise ValueError("translating a FiniteCut needs its group")
        moved = frozenset(self.group.mul(h, m) for m in self.members)
        return FiniteCut(moved, self.co, self.group)


def cut_key(c) -> tuple:
    if isinstance(c, Threshold):
        return (0, c.t, not c.up)
    if isinstance(c, Halfspace):
        return (1, c.axis, c.t, not c.up)
    return (2, c.co, tuple(sorted(order_key(m) for m in c.members)))


def separates(c, points) -> bool:
    inside = outside = False
    for p in points:
        if c.contains(p):
            inside = True
        else:
            outside = True
        if inside and outside:
            return True
    return False


# -- families and measures ----------------------------------------------------


@dataclass(frozen=True)
class CutFamily:
    """``kind`` is ``"threshold"``, ``"halfspace"`` or ``"explicit"``.

    Explicit families carry their cuts (with weights) in ``weights``;
    implicit ones are never materialized except through windows.
    """

    kind: str
    d: int = 1
    closed: bool = False
    weights: tuple = ()

    @classmethod
    def threshold(cls, closed: bool = False) -> CutFamily:
        return cls("threshold", closed=closed)

    @classmethod
    def halfspace(cls, d: int, closed: bool = False) -> CutFamily:
        return cls("halfspace", d=d, closed=closed)

    @classmethod
    def explicit(cls, weights: dict) -> CutFamily:
        items = []
        for c, w in weights.items():
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight {w} on {c}")
            if w:
                items.append((c, w))
        items.sort(key=lambda cw: cut_key(cw[0]))
        closed = all(c.complement() in weights for c, _ in items)
        return cls("explicit", closed=closed, weights=tuple(items))


@dataclass(frozen=True)
class CutMeasure:
    """A cut family with weights; implicit kinds weigh every cut ``scale``."""

    family: CutFamily
    scale: Fraction = Fraction(1)

    @classmethod
    def uniform_threshold(cls, closed: bool = True) -> CutMeasure:
        return cls(CutFamily.threshold(closed))

    @classmethod
    def uniform_halfspace(cls, d: int, closed: bool = True) -> CutMeasure:
        return cls(CutFamily.halfspace(d, closed))

    @classmethod
    def explicit(cls, weights: dict) -> CutMeasure:
        return cls(CutFamily.explicit(weights))

    @property
    def closed(self) -> bool:
        return self.family.closed

    def weight(self, c) -> Fraction:
        fam = self.family
        if fam.kind == "explicit":
            return self.scale * dict(fam.weights).get(c, Fraction(0))
        if fam.kind == "threshold" and isinstance(c, Threshold):
            return self.scale if (c.up or fam.closed) else Fraction(0)
        if fam.kind == "halfspace" and isinstance(c, Halfspace) and c.axis < fam.d:
            return self.scale if (c.up or fam.closed) else Fraction(0)
        return Fraction(0)

    def separating_cuts(self, points) -> list:
        """Every positive-weight cut separating ``points``, with its weight.

        Finite for the implicit kinds because only thresholds strictly inside
        the coordinate range can separate.
        """
        pts = list(points)
        fam = self.family
        if len(pts) < 2:
            return []
        out = []
        if fam.kind == "explicit":
            for c, w in fam.weights:
                if separates(c, pts):
                    out.append((c, self.scale * w))
            return out
        orientations = (True, False) if fam.closed else (True,)
        if fam.kind == "threshold":
            lo, hi = min(pts), max(pts)
            for t in range(lo + 1, hi + 1):
                for up in orientations:
                    out.append((Threshold(t, up), self.scale))
            return out
        for axis in range(fam.d):
            lo = min(p[axis] for p in pts)
            hi = max(p[axis] for p in pts)
            for t in range(lo + 1, hi + 1):
                for up in orientations:
                    out.append((Halfspace(axis, t, up), self.scale))
        return out


def separation_measure(m: CutMeasure, S: Iterable) -> Fraction:
    """Total weight of cuts meeting both S and its complement."""
    pts = list(S)
    if not pts:
        raise ValueError("separation_measure needs a nonempty set")
    fam = m.family
    if fam.kind == "explicit":
        return sum((w for _, w in m.separating_cuts(pts)), Fraction(0))
    factor = m.scale * (2 if fam.closed else 1)
    if fam.kind == "threshold":
        return factor * (max(pts) - min(pts))
    span = sum(max(p[i] for p in pts) - min(p[i] for p in pts) for i in range(fam.d))
    return factor * span


def cut_pseudometric(m: CutMeasure, x, y) -> Fraction:
    return separation_measure(m, (x, y))


def complement_close(m: CutMeasure) -> CutMeasure:
    """New measure mu(A) = rho(A) + rho(complement of A)."""
    fam = m.family
    if fam.kind == "explicit":
        old = dict(fam.weights)
        new = {}
        for c in list(old) + [c.complement() for c in old]:
            new[c] = old.get(c, Fraction(0)) + old.get(c.complement(), Fraction(0))
        return CutMeasure(CutFamily.explicit(new), m.scale)
    if fam.closed:
        return CutMeasure(fam, m.scale * 2)
    return CutMeasure(CutFamily(fam.kind, d=fam.d, closed=True), m.scale)


@dataclass(frozen=True)
class WindowCut:
    cut: object
    mask: int
    weight: Fraction


def window_order(window) -> list:
    return sorted(set(window), key=order_key)


def _candidate_cuts(m: CutMeasure, pts: list) -> list:
    """Cuts that can have a proper trace on ``pts``, with weights."""
    fam = m.family
    if fam.kind == "explicit":
        return [(c, m.scale * w) for c, w in fam.weights]
    return m.separating_cuts(pts)


def enumerate_window(m: CutMeasure, window) -> list[WindowCut]:
    """Cuts with a proper trace on ``window``, one entry per distinct trace.

    Bit ``i`` of ``mask`` is membership of the i-th window element in
    ``window_order``. Cuts sharing a trace merge: the first in ``cut_key``
    order stays as the id and the weights add.
    """
    pts = window_order(window)
    if not pts:
        raise ValueError("window must be nonempty")
    cap = budget()
    if len(pts) > cap:
        raise BudgetExceeded(f"window of {len(pts)} points exceeds budget {cap}")
    full = (1 << len(pts)) - 1
    by_mask: dict[int, list] = {}
    for c, w in sorted(_candidate_cuts(m, pts), key=lambda cw: cut_key(cw[0])):
        if not w:
            continue
        mask = 0
        for i, p in enumerate(pts):
            if c.contains(p):
                mask |= 1 << i
        if mask == 0 or mask == full:
            continue
        if mask in by_mask:
            by_mask[mask][1] += w
        else:
            by_mask[mask] = [c, w]
        if len(by_mask) > cap:
            raise BudgetExceeded("window enumeration exceeds budget")
    rows = [WindowCut(c, mask, w) for mask, (c, w) in by_mask.items()]
    rows.sort(key=lambda r: cut_key(r.cut))
    return rows
