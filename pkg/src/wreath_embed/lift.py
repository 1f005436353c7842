"""Lift of a base cut measure to the cuts E(B, f) of the lamplighter group.

A lifted cut E(B, f) is the set of wreath elements whose cursor lies in B
and whose lamps outside B agree with f. Two independent routes compute the
resulting distance: :func:`lifted_separation` (closed form through the base
measure) and :func:`lifted_distance_exact` (brute force over an explicit
population).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cuts import CutMeasure, cut_key, enumerate_window, separation_measure
from .group_core import BudgetExceeded, Group, WreathElement, budget, order_key
from .wreath import support_diff


class WindowError(ValueError):
    """Population does not sit inside the window with the required margin."""


@dataclass(frozen=True)
class LiftedCut:
    base_cut: object
    config: frozenset

    def sort_key(self):
        cfg = tuple(sorted((order_key(z), order_key(v)) for z, v in self.config))
        return (cut_key(self.base_cut), cfg)


def restrict_outside(a: WreathElement, cut) -> frozenset:
    """The lamps of ``a`` that sit in the complement of ``cut``."""
    return frozenset((z, v) for z, v in a.lamps if not cut.contains(z))


def member(c: LiftedCut, a: WreathElement) -> bool:
    return c.base_cut.contains(a.cursor) and restrict_outside(a, c.base_cut) == c.config


def lifted_separation(g: Group, m: CutMeasure, a: WreathElement, b: WreathElement) -> Fraction:
    """Base measure of cuts separating supp(f^-1 g) together with both cursors."""
    if not m.closed:
        raise ValueError("lifted_separation needs a complement-closed measure")
    S = set(support_diff(g, a, b))
    S.update((a.cursor, b.cursor))
    return separation_measure(m, S)


def check_margin(g: Group, population, window) -> None:
    """Every cursor and lit site, and all their neighbours, must lie in ``window``."""
    win = set(window)
    gens = g.base.generators()
    for a in population:
        for z in {a.cursor} | a.support:
            if z not in win or any(g.base.mul(z, t) not in win for t in gens):
                raise WindowError(f"{a!r} touches {z!r} on or beyond the window edge")


@dataclass
class LiftedEnumeration:
    """Lifted cuts that separate at least one pair of ``population``."""

    group: Group
    measure: CutMeasure
    population: list
    cuts: list  # [(LiftedCut, Fraction)]
    membership: dict  # element -> frozenset of indices into ``cuts``

    def weight_of(self, i: int) -> Fraction:
        return self.cuts[i][1]


def enumerate_lifted(g: Group, m: CutMeasure, population, window) -> LiftedEnumeration:
    pop = sorted(set(population), key=order_key)
    g.check(*pop)
    check_margin(g, pop, window)
    cap = budget()
    cuts = []
    members: dict = {a: [] for a in pop}
    for wc in enumerate_window(m, window):
        B = wc.cut
        groups: dict = {}
        for a in pop:
            if B.contains(a.cursor):
                groups.setdefault(restrict_outside(a, B), []).append(a)
        for cfg, inside in groups.items():
            if len(inside) == len(pop):
                continue
            cuts.append((LiftedCut(B, cfg), wc.weight, inside))
        if len(cuts) > cap:
            raise BudgetExceeded("lifted enumeration exceeds budget")
    cuts.sort(key=lambda row: row[0].sort_key())
    for i, (_, _, inside) in enumerate(cuts):
        for a in inside:
            members[a].append(i)
    return LiftedEnumeration(
        group=g,
        measure=m,
        population=pop,
        cuts=[(c, w) for c, w, _ in cuts],
        membership={a: frozenset(ix) for a, ix in members.items()},
    )


def lifted_distance_exact(enum: LiftedEnumeration, a: WreathElement, b: WreathElement) -> Fraction:
    """Weight of enumerated lifted cuts containing exactly one of a, b."""
    try:
        ma, mb = enum.membership[a], enum.membership[b]
    except KeyError as exc:
        raise ValueError(f"{exc.args[0]!r} is outside the enumerated population") from None
    return sum((enum.cuts[i][1] for i in ma ^ mb), Fraction(0))
