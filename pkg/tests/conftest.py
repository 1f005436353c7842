from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from wreath_embed.cuts import CutMeasure
from wreath_embed.group_core import Group, WreathElement

BASELINES = Path(__file__).with_name("baselines.txt")

C2 = Group.cyclic(2)
Z = Group.integers()
C2Z = Group.wreath(C2, Z)
ZZ = Group.wreath(Z, Z)


@pytest.fixture
def c2z():
    return C2Z


@pytest.fixture
def zz():
    return ZZ


@pytest.fixture
def closed_threshold():
    return CutMeasure.uniform_threshold(closed=True)


def lit(sites, cursor=0) -> WreathElement:
    """C2 wr Z element with the given lamps on."""
    return WreathElement(frozenset((s, 1) for s in sites), cursor)


def wreath_elements(lamp: Group, lo: int = -6, hi: int = 6, max_lamps: int = 5):
    """Elements of lamp wr Z with support and cursor inside [lo, hi]."""
    if lamp.kind == "C":
        values = st.integers(1, lamp.n - 1)
    else:
        values = st.integers(-3, 3).filter(bool)
    return st.builds(
        lambda lamps, cursor: WreathElement(frozenset(lamps.items()), cursor),
        st.dictionaries(st.integers(lo, hi), values, max_size=max_lamps),
        st.integers(lo, hi),
    )
