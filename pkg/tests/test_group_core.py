import itertools
import random

import pytest
from hypothesis import given, strategies as st

from wreath_embed.group_core import (
    CapExceeded,
    ElementMismatch,
    Group,
    ball,
    ball_lengths,
    dist_closed,
    inv,
    mul,
    word_length_bfs,
)

from conftest import C2Z, lit

CLOSED = [Group.integers(), Group.lattice(2), Group.lattice(3), Group.cyclic(5), Group.cyclic(2)]


def test_mul_examples():
    assert mul(Group.integers(), 3, -4) == -1
    assert mul(Group.cyclic(5), 3, 4) == 2


@pytest.mark.parametrize("g", CLOSED + [C2Z], ids=str)
def test_identity_is_neutral(g):
    rng = random.Random(0)
    elems = ball(g, 4)
    e = g.identity()
    for b in rng.choices(elems, k=100):
        assert mul(g, e, b) == b
        assert mul(g, b, e) == b


def test_inv_examples():
    assert inv(Group.integers(), 7) == -7
    assert inv(Group.cyclic(5), 2) == 3
    for g in CLOSED + [C2Z]:
        assert inv(g, g.identity()) == g.identity()


def test_mismatch_raises():
    with pytest.raises(ElementMismatch):
        mul(Group.cyclic(5), 7, 1)
    with pytest.raises(ElementMismatch):
        inv(Group.lattice(2), (1, 2, 3))
    with pytest.raises(ElementMismatch):
        mul(C2Z, 1, 2)


def test_cyclic_residues_are_canonical():
    assert Group.cyclic(5).element(-2) == 3


def test_dist_closed_examples():
    assert dist_closed(Group.integers(), 3, -4) == 7
    assert dist_closed(Group.lattice(2), (0, 0), (2, 3)) == 5
    assert dist_closed(Group.cyclic(5), 0, 3) == 2
    with pytest.raises(ValueError):
        dist_closed(C2Z, C2Z.identity(), C2Z.identity())


def test_word_length_examples():
    assert word_length_bfs(Group.integers(), 5, 10) == 5
    assert word_length_bfs(C2Z, C2Z.identity(), 10) == 0
    # BFS value; also the tour 0 -> -1 -> 2 -> 0 (length 6) plus two toggles
    assert word_length_bfs(C2Z, lit({-1, 2}), 20) == 8
    with pytest.raises(CapExceeded):
        word_length_bfs(Group.integers(), 11, 10)


def test_ball_examples():
    assert ball(Group.integers(), 3) == [0, -1, 1, -2, 2, -3, 3]
    assert sorted(ball(Group.integers(), 3)) == list(range(-3, 4))
    assert ball(C2Z, 0) == [C2Z.identity()]


def _ball_by_words(g, r):
    """Independent oracle: multiply out every word of length <= r."""
    gens = g.generators()
    out = {g.identity()}
    for k in range(1, r + 1):
        for word in itertools.product(gens, repeat=k):
            x = g.identity()
            for s in word:
                x = g.mul(x, s)
            out.add(x)
    return out


def test_ball_c2z_radius4_frozen():
    assert len(_ball_by_words(C2Z, 4)) == 44
    assert set(ball(C2Z, 4)) == _ball_by_words(C2Z, 4)
    assert len(ball(C2Z, 4)) == 44


def test_ball_order_is_deterministic():
    assert ball(C2Z, 5) == ball(C2Z, 5)


@pytest.mark.parametrize("g", CLOSED, ids=str)
def test_closed_metric_matches_bfs(g):
    pts = ball(g, 6)
    bfs = ball_lengths(g, 12)
    for a in pts:
        for b in pts:
            assert dist_closed(g, a, b) == bfs[g.mul(g.inv(a), b)]
    for a in pts[:10]:
        assert word_length_bfs(g, a, 6) == dist_closed(g, g.identity(), a)


@pytest.mark.parametrize("g", CLOSED, ids=str)
def test_metric_axioms_and_left_invariance(g):
    pts = ball(g, 5)
    rng = random.Random(1)
    for _ in range(300):
        a, b, c = rng.choices(pts, k=3)
        assert dist_closed(g, a, b) == dist_closed(g, b, a)
        assert (dist_closed(g, a, b) == 0) == (a == b)
        assert dist_closed(g, a, c) <= dist_closed(g, a, b) + dist_closed(g, b, c)
        assert dist_closed(g, mul(g, c, a), mul(g, c, b)) == dist_closed(g, a, b)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_cyclic_associativity(a, b, c):
    g = Group.cyclic(7)
    a, b, c = (g.element(v) for v in (a, b, c))
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_budget_env(monkeypatch):
    from wreath_embed.group_core import BudgetExceeded

    monkeypatch.setenv("WREATH_EMBED_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        ball(C2Z, 6)
