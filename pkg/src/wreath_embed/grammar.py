"""Group strings: ``Z``, ``Z^d``, ``C<n>`` and ``wr(<lamp>,<base>)``, nestable."""

from __future__ import annotations

import re

from .group_core import Group, GroupError

MAX_DEPTH = 3

_ATOM = re.compile(r"Z\^(\d+)|Z|C(\d+)")


def format_group(g: Group) -> str:
    if g.kind == "Z":
        return "Z"
    if g.kind == "Zd":
        return f"Z^{g.d}"
    if g.kind == "C":
        return f"C{g.n}"
    return f"wr({format_group(g.lamp)},{format_group(g.base)})"


def depth(g: Group) -> int:
    if not g.is_wreath:
        return 0
    return 1 + max(depth(g.lamp), depth(g.base))


def parse_group(text: str) -> Group:
    """Parse a group string; whitespace is ignored, nesting depth is capped."""
    s = "".join(text.split())
    g, pos = _parse(s, 0)
    if pos != len(s):
        raise GroupError(f"trailing input at {pos} in {text!r}")
    if depth(g) > MAX_DEPTH:
        raise GroupError(f"wreath nesting deeper than {MAX_DEPTH}")
    return g


def _parse(s: str, pos: int) -> tuple[Group, int]:
    if s.startswith("wr(", pos):
        lamp, pos = _parse(s, pos + 3)
        if not s.startswith(",", pos):
            raise GroupError(f"expected ',' at {pos} in {s!r}")
        base, pos = _parse(s, pos + 1)
        if not s.startswith(")", pos):
            raise GroupError(f"expected ')' at {pos} in {s!r}")
        return Group.wreath(lamp, base), pos + 1
    m = _ATOM.match(s, pos)
    if not m:
        raise GroupError(f"cannot parse group at {pos} in {s!r}")
    if m.group(1):
        return Group.lattice(int(m.group(1))), m.end()
    if m.group(2):
        return Group.cyclic(int(m.group(2))), m.end()
    return Group.integers(), m.end()
