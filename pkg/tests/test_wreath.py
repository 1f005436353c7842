import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wreath_embed.group_core import Group, ball, ball_lengths
from wreath_embed.wreath import (
    TooManyPoints,
    TspInstance,
    lamplighter_length,
    sweep_tour_z,
    support_diff,
    tsp_tour,
    tsp_tour_order,
    wreath_inv,
    wreath_mul,
)

from conftest import C2Z, ZZ, lit, wreath_elements


def line(a, b):
    return abs(a - b)


def brute_tour(start, points, end, d):
    best = None
    for perm in itertools.permutations(points):
        path = (start,) + perm + (end,)
        cost = sum(d(u, v) for u, v in zip(path, path[1:]))
        best = cost if best is None else min(best, cost)
    return best


def test_mul_example():
    assert wreath_mul(C2Z, lit({0}, 1), lit({0}, 2)) == lit({0, 1}, 3)


def test_identity_and_inverse():
    e = C2Z.identity()
    rng = random.Random(3)
    pts = ball(C2Z, 5)
    for a in rng.choices(pts, k=100):
        assert wreath_mul(C2Z, e, a) == a
        assert wreath_mul(C2Z, a, wreath_inv(C2Z, a)) == e
        assert wreath_inv(C2Z, wreath_inv(C2Z, a)) == a
    assert wreath_inv(C2Z, e) == e


def test_inverse_example():
    a = lit({2}, 3)
    ai = wreath_inv(C2Z, a)
    assert ai == lit({-1}, -3)
    assert wreath_mul(C2Z, a, ai) == C2Z.identity()


def test_associativity_on_ball():
    pts = ball(C2Z, 4)
    rng = random.Random(4)
    for _ in range(500):
        a, b, c = rng.choices(pts, k=3)
        assert wreath_mul(C2Z, wreath_mul(C2Z, a, b), c) == wreath_mul(C2Z, a, wreath_mul(C2Z, b, c))


@given(wreath_elements(Group.integers()), wreath_elements(Group.integers()), wreath_elements(Group.integers()))
def test_associativity_z_wr_z(a, b, c):
    assert wreath_mul(ZZ, wreath_mul(ZZ, a, b), c) == wreath_mul(ZZ, a, wreath_mul(ZZ, b, c))


def test_products_stay_normalized():
    a = lit({0})
    assert wreath_mul(C2Z, a, a) == C2Z.identity()
    assert wreath_mul(C2Z, a, a).lamps == frozenset()


def test_support_diff_examples():
    a = lit({0, 3})
    assert support_diff(C2Z, a, a) == frozenset()
    assert support_diff(C2Z, a, lit({3, 5})) == {0, 5}


def test_support_diff_is_support_of_quotient():
    pts = ball(C2Z, 4)
    for a in pts:
        for b in pts[:15]:
            q = wreath_mul(C2Z, wreath_inv(C2Z, a), b)
            shifted = {a.cursor + z for z in q.support}
            assert support_diff(C2Z, a, b) == shifted


def test_tsp_examples():
    assert brute_tour(0, (-1, 2), 0, line) == 6
    assert tsp_tour(TspInstance(0, frozenset({-1, 2}), 0, line)) == 6
    assert tsp_tour(TspInstance(0, frozenset(), 5, line)) == 5
    assert tsp_tour(TspInstance(4, frozenset(), 4, line)) == 0


def test_tsp_limit():
    with pytest.raises(TooManyPoints):
        tsp_tour(TspInstance(0, frozenset(range(20)), 0, line))


def test_tsp_order_is_lexicographic_among_optima():
    length, order = tsp_tour_order(TspInstance(0, frozenset({-1, 1}), 0, line))
    assert length == 4
    assert order == [-1, 1]


@settings(max_examples=200)
@given(st.integers(-8, 8), st.sets(st.integers(-8, 8), max_size=6), st.integers(-8, 8))
def test_dp_matches_permutations_and_sweep(start, points, end):
    pts = tuple(sorted(points))
    want = brute_tour(start, pts, end, line)
    assert tsp_tour(TspInstance(start, frozenset(pts), end, line)) == want
    assert sweep_tour_z(start, pts, end) == want


@settings(max_examples=60)
@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.sets(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), max_size=5))
def test_dp_on_lattice(start, points):
    def l1(u, v):
        return abs(u[0] - v[0]) + abs(u[1] - v[1])

    pts = tuple(sorted(points))
    assert tsp_tour(TspInstance(start, frozenset(pts), start, l1)) == brute_tour(start, pts, start, l1)


def test_lamplighter_examples():
    e = C2Z.identity()
    assert lamplighter_length(C2Z, e, lit({-1, 2})) == 8
    a = lit({4, -2}, 1)
    assert lamplighter_length(C2Z, a, a) == 0
    assert lamplighter_length(C2Z, lit(set(), 0), lit(set(), 5)) == 5


def test_lamplighter_equals_word_metric_c2z():
    lengths = ball_lengths(C2Z, 8)
    e = C2Z.identity()
    for x, d in lengths.items():
        assert lamplighter_length(C2Z, e, x) == d


def test_lamplighter_left_invariant():
    pts = ball(C2Z, 5)
    rng = random.Random(5)
    for _ in range(300):
        a, b, c = rng.choices(pts, k=3)
        assert lamplighter_length(C2Z, wreath_mul(C2Z, c, a), wreath_mul(C2Z, c, b)) == lamplighter_length(C2Z, a, b)


def test_z_wr_z_sandwich_baseline():
    from fractions import Fraction

    from wreath_embed.embed import read_baselines
    from conftest import BASELINES

    base = read_baselines(BASELINES)
    e = ZZ.identity()
    ratios = [Fraction(d, lamplighter_length(ZZ, e, x)) for x, d in ball_lengths(ZZ, 5).items() if d]
    assert min(ratios) >= base["zwrz_ratio_min_r5"] > 0
    assert max(ratios) <= base["zwrz_ratio_max_r5"]


def test_iterated_wreath_surrogate_matches_bfs():
    g = Group.wreath(Group.integers(), ZZ)
    e = g.identity()
    for x, d in ball_lengths(g, 4).items():
        assert lamplighter_length(g, e, x) == d


def test_lattice_base_uses_dp():
    g = Group.wreath(Group.cyclic(2), Group.lattice(2))
    e = g.identity()
    for x, d in ball_lengths(g, 5).items():
        assert lamplighter_length(g, e, x) == d
