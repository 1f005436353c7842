"""Wreath product algebra and the traveling-salesman word-length surrogate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .group_core import GroupError, Group, WreathElement, order_key

MAX_TSP_POINTS = 14


class TooManyPoints(GroupError):
    pass


def wreath_mul(g: Group, a: WreathElement, b: WreathElement) -> WreathElement:
    """(f, x)(h, y) = (z -> f(z) h(x^-1 z), xy)."""
    base, lamp = g.base, g.lamp
    e = lamp.identity()
    lamps = dict(a.lamp_map)
    x = a.cursor
    for k, v in b.lamps:
        z = base.mul(x, k)
        w = lamp.mul(lamps.get(z, e), v)
        if w == e:
            lamps.pop(z, None)
        else:
            lamps[z] = w
    return WreathElement(frozenset(lamps.items()), base.mul(x, b.cursor))


def wreath_inv(g: Group, a: WreathElement) -> WreathElement:
    """(f, x)^-1 = (T_{x^-1}(f^-1), x^-1)."""
    base, lamp = g.base, g.lamp
    xi = base.inv(a.cursor)
    lamps = frozenset((base.mul(xi, k), lamp.inv(v)) for k, v in a.lamps)
    return WreathElement(lamps, xi)


def support_diff(g: Group, a: WreathElement, b: WreathElement) -> frozenset:
    """Sites where the two lamp configurations disagree (supp f^-1 g)."""
    g.check(a, b)
    am, bm = a.lamp_map, b.lamp_map
    e = g.lamp.identity()
    return frozenset(
        z for z in am.keys() | bm.keys() if am.get(z, e) != bm.get(z, e)
    )


@dataclass(frozen=True)
class TspInstance:
    """Open tour from ``start`` through every point of ``points`` to ``end``."""

    start: Any
    points: frozenset
    end: Any
    metric: Callable[[Any, Any], int]


def _ordered_points(inst: TspInstance) -> list:
    return sorted(inst.points, key=order_key)


def tsp_tour_order(inst: TspInstance) -> tuple[int, list]:
    """Held-Karp DP. Returns the optimal length and a visiting order.

    Among optimal orders the lexicographically smallest one (points sorted
    by ``order_key``) is returned.
    """
    pts = _ordered_points(inst)
    n = len(pts)
    if n > MAX_TSP_POINTS:
        raise TooManyPoints(f"{n} points exceed the DP limit of {MAX_TSP_POINTS}")
    d = inst.metric
    if n == 0:
        return d(inst.start, inst.end), []
    to_end = [d(p, inst.end) for p in pts]
    pair = [[d(p, q) for q in pts] for p in pts]
    full = (1 << n) - 1
    # rest[mask][j]: cheapest finish from pts[j] having visited ``mask``
    rest = [[0] * n for _ in range(1 << n)]
    for j in range(n):
        rest[full][j] = to_end[j]
    for mask in range(full - 1, 0, -1):
        row = rest[mask]
        for j in range(n):
            if not mask >> j & 1:
                continue
            best = None
            for k in range(n):
                if mask >> k & 1:
                    continue
                c = pair[j][k] + rest[mask | 1 << k][k]
                if best is None or c < best:
                    best = c
            row[j] = best
    first = [d(inst.start, p) + rest[1 << j][j] for j, p in enumerate(pts)]
    length = min(first)
    order = []
    j = first.index(length)
    mask = 1 << j
    order.append(pts[j])
    while mask != full:
        target = rest[mask][j]
        for k in range(n):
            if not mask >> k & 1 and pair[j][k] + rest[mask | 1 << k][k] == target:
                j = k
                mask |= 1 << k
                order.append(pts[k])
                break
    return length, order


def tsp_tour(inst: TspInstance) -> int:
    """Exact minimum tour length."""
    return tsp_tour_order(inst)[0]


def sweep_tour_z(start: int, points, end: int) -> int:
    """Closed-form tour length on the integer line.

    Cover the hull [lo, hi] of all points and endpoints, either sweeping
    left first or right first.
    """
    pts = list(points)
    lo = min(pts + [start, end])
    hi = max(pts + [start, end])
    left_first = (start - lo) + (hi - lo) + (hi - end)
    right_first = (hi - start) + (hi - lo) + (end - lo)
    return min(left_first, right_first)


def base_distance(g: Group, a, b) -> int:
    """Word-metric surrogate on any supported descriptor."""
    if g.has_closed_metric:
        return g.dist_closed(a, b)
    return lamplighter_length(g, a, b)


def lamplighter_length(g: Group, a: WreathElement, b: WreathElement) -> int:
    """Tour through the differing lamps plus the per-site lamp distances.

    For G wr H with the standard generators this is the exact word metric
    whenever the base and lamp metrics are exact.
    """
    if not g.is_wreath:
        raise GroupError("lamplighter_length needs a wreath descriptor")
    diff = support_diff(g, a, b)
    e = g.lamp.identity()
    am, bm = a.lamp_map, b.lamp_map
    lamp_cost = sum(base_distance(g.lamp, am.get(z, e), bm.get(z, e)) for z in diff)
    if g.base.kind == "Z":
        tour = sweep_tour_z(a.cursor, diff, b.cursor)
    else:
        inst = TspInstance(a.cursor, diff, b.cursor, lambda u, v: base_distance(g.base, u, v))
        tour = tsp_tour(inst)
    return tour + lamp_cost
