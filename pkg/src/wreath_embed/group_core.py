"""Concrete finitely generated groups: Z, Z^d, C_n and wreath products of these.

Elements are plain Python values so they hash and compare structurally:

* ``Integers``          -> ``int``
* ``IntegerLattice(d)`` -> ``tuple`` of ``d`` ints
* ``Cyclic(n)``         -> ``int`` in ``[0, n)``
* ``Wreath(lamp, base)``-> :class:`WreathElement`
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Hashable

Element = Hashable

DEFAULT_BUDGET = 500_000


class GroupError(ValueError):
    pass


class ElementMismatch(GroupError):
    """An element does not belong to the descriptor it was used with."""


class CapExceeded(GroupError):
    """BFS exhausted ``radius_cap`` without reaching the target."""


class BudgetExceeded(GroupError):
    """An enumeration grew past the configured size budget."""


def budget() -> int:
    """Enumeration size cap, overridable through ``WREATH_EMBED_BUDGET``."""
    raw = os.environ.get("WREATH_EMBED_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


@dataclass(frozen=True)
class WreathElement:
    """A lamp configuration with finite support plus a cursor in the base.

    ``lamps`` holds ``(site, value)`` pairs and never contains the lamp
    identity, so structural equality is group equality.
    """

    lamps: frozenset
    cursor: Any
    _map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.lamps))

    @property
    def lamp_map(self) -> dict:
        return self._map

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def lamp(self, site, default):
        return self._map.get(site, default)

    def __repr__(self):
        items = sorted(self.lamps, key=lambda kv: order_key(kv[0]))
        body = ", ".join(f"{k!r}:{v!r}" for k, v in items)
        return f"W({{{body}}}, {self.cursor!r})"


def order_key(x) -> tuple:
    """Total order over every element representation used here."""
    if isinstance(x, bool):
        raise GroupError("booleans are not group elements")
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, tuple):
        return (1, x)
    if isinstance(x, WreathElement):
        lamps = tuple(sorted((order_key(k), order_key(v)) for k, v in x.lamps))
        return (2, order_key(x.cursor), lamps)
    raise GroupError(f"no ordering for {x!r}")


@dataclass(frozen=True)
class Group:
    """Descriptor of a concrete group together with its standard generators.

    Use the constructors :meth:`integers`, :meth:`lattice`, :meth:`cyclic`
    and :meth:`wreath` rather than building instances by hand.
    """

    kind: str
    d: int = 0
    n: int = 0
    lamp: Group | None = None
    base: Group | None = None

    @classmethod
    def integers(cls) -> Group:
        return cls("Z")

    @classmethod
    def lattice(cls, d: int) -> Group:
        if d < 1:
            raise GroupError("lattice dimension must be positive")
        return cls("Zd", d=d)

    @classmethod
    def cyclic(cls, n: int) -> Group:
        if n < 2:
            raise GroupError("cyclic order must be at least 2")
        return cls("C", n=n)

    @classmethod
    def wreath(cls, lamp: Group, base: Group) -> Group:
        return cls("wr", lamp=lamp, base=base)

    @property
    def is_wreath(self) -> bool:
        return self.kind == "wr"

    @property
    def has_closed_metric(self) -> bool:
        return self.kind in ("Z", "Zd", "C")

    def identity(self):
        if self.kind == "Z" or self.kind == "C":
            return 0
        if self.kind == "Zd":
            return (0,) * self.d
        return WreathElement(frozenset(), self.base.identity())

    def contains(self, a) -> bool:
        if self.kind == "Z":
            return isinstance(a, int) and not isinstance(a, bool)
        if self.kind == "C":
            return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n
        if self.kind == "Zd":
            return (
                isinstance(a, tuple)
                and len(a) == self.d
                and all(isinstance(c, int) for c in a)
            )
        if not isinstance(a, WreathElement) or not self.base.contains(a.cursor):
            return False
        e = self.lamp.identity()
        return all(
            self.base.contains(k) and self.lamp.contains(v) and v != e
            for k, v in a.lamps
        )

    def check(self, *elems) -> None:
        for a in elems:
            if not self.contains(a):
                raise ElementMismatch(f"{a!r} is not an element of {self}")

    def element(self, value):
        """Canonical element from a loose value (reduces residues mod n)."""
        if self.kind == "C":
            return int(value) % self.n
        if self.kind == "Zd":
            return tuple(int(c) for c in value)
        if self.kind == "Z":
            return int(value)
        if isinstance(value, WreathElement):
            return value
        lamps, cursor = value
        return self.make_wreath(dict(lamps), cursor)

    def make_wreath(self, lamps: dict, cursor) -> WreathElement:
        e = self.lamp.identity()
        return WreathElement(
            frozenset((k, v) for k, v in lamps.items() if v != e), cursor
        )

    def mul(self, a, b):
        if self.kind == "Z":
            return a + b
        if self.kind == "C":
            return (a + b) % self.n
        if self.kind == "Zd":
            return tuple(x + y for x, y in zip(a, b))
        from .wreath import wreath_mul

        return wreath_mul(self, a, b)

    def inv(self, a):
        if self.kind == "Z":
            return -a
        if self.kind == "C":
            return (-a) % self.n
        if self.kind == "Zd":
            return tuple(-x for x in a)
        from .wreath import wreath_inv

        return wreath_inv(self, a)

    def generators(self) -> tuple:
        """Symmetric generating set in a fixed order."""
        if self.kind == "Z":
            return (1, -1)
        if self.kind == "C":
            return tuple(dict.fromkeys((1 % self.n, (-1) % self.n)))
        if self.kind == "Zd":
            gens = []
            for i in range(self.d):
                for sign in (1, -1):
                    v = [0] * self.d
                    v[i] = sign
                    gens.append(tuple(v))
            return tuple(gens)
        e_base = self.base.identity()
        moves = [WreathElement(frozenset(), t) for t in self.base.generators()]
        toggles = [
            WreathElement(frozenset({(e_base, s)}), e_base)
            for s in self.lamp.generators()
        ]
        return tuple(moves + toggles)

    def dist_closed(self, a, b) -> int:
        if self.kind == "Z":
            return abs(a - b)
        if self.kind == "Zd":
            return sum(abs(x - y) for x, y in zip(a, b))
        if self.kind == "C":
            r = (b - a) % self.n
            return min(r, self.n - r)
        raise GroupError("wreath products have no closed-form metric; use lamplighter_length or BFS")

    def __str__(self):
        from .grammar import format_group

        return format_group(self)


def mul(g: Group, a, b):
    g.check(a, b)
    return g.mul(a, b)


def inv(g: Group, a):
    g.check(a)
    return g.inv(a)


def dist_closed(g: Group, a, b) -> int:
    g.check(a, b)
    return g.dist_closed(a, b)


def _bfs_layers(g: Group, radius: int, target=None):
    """Yield ``(element, distance)`` outward from the identity."""
    gens = g.generators()
    start = g.identity()
    seen = {start}
    frontier = [start]
    cap = budget()
    yield start, 0
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise BudgetExceeded(f"ball of radius {r} exceeds budget {cap}")
        for y in nxt:
            yield y, r
        frontier = nxt
        if not frontier:
            return


def word_length_bfs(g: Group, a, radius_cap: int) -> int:
    """Exact word length of ``a`` by breadth-first search in the Cayley graph."""
    g.check(a)
    if radius_cap < 1:
        raise GroupError("radius_cap must be positive")
    for x, r in _bfs_layers(g, radius_cap):
        if x == a:
            return r
    raise CapExceeded(f"{a!r} not within distance {radius_cap}")


def ball_lengths(g: Group, r: int) -> dict:
    """Map every element of the radius-``r`` ball to its word length."""
    if r < 0:
        raise GroupError("radius must be nonnegative")
    return dict(_bfs_layers(g, r))


def ball(g: Group, r: int) -> list:
    """Elements at word distance <= r, ordered by (length, order_key).

    Growth is exponential for wreath products: |ball(C2 wr Z, r)| roughly
    doubles every two steps, so keep r in single digits.
    """
    lengths = ball_lengths(g, r)
    return sorted(lengths, key=lambda x: (lengths[x], order_key(x)))
