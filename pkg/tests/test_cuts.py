import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wreath_embed.cuts import (
    CutMeasure,
    FiniteCut,
    Halfspace,
    Threshold,
    complement_close,
    cut_pseudometric,
    enumerate_window,
    separation_measure,
    window_order,
)
from wreath_embed.group_core import BudgetExceeded, Group


def enumerate_thresholds(S, lo, hi, closed=False):
    """Oracle: count integer thresholds t in [lo, hi] whose cut splits S."""
    total = 0
    for t in range(lo, hi + 1):
        ups = [s >= t for s in S]
        if any(ups) and not all(ups):
            total += 2 if closed else 1
    return total


def enumerate_halfspaces(S, lo, hi):
    total = 0
    for axis in range(len(S[0])):
        total += enumerate_thresholds([s[axis] for s in S], lo, hi)
    return total


def test_threshold_separation_example():
    m = CutMeasure.uniform_threshold(closed=False)
    assert enumerate_thresholds([-2, 5], -3, 6) == 7
    assert separation_measure(m, {-2, 5}) == 7


def test_singletons_are_never_separated():
    for m in (
        CutMeasure.uniform_threshold(False),
        CutMeasure.uniform_threshold(True),
        CutMeasure.uniform_halfspace(2),
        CutMeasure.explicit({Threshold(0): 1, FiniteCut(frozenset({3})): 5}),
    ):
        for x in (0, 3, (1, 1)):
            if (isinstance(x, tuple)) == (m.family.kind == "halfspace"):
                assert separation_measure(m, {x}) == 0


def test_halfspace_example():
    m = CutMeasure.uniform_halfspace(2, closed=False)
    assert enumerate_halfspaces([(0, 0), (2, 3)], -2, 5) == 5
    assert separation_measure(m, {(0, 0), (2, 3)}) == 5
    assert cut_pseudometric(m, (0, 0), (2, 3)) == 5


def test_pseudometric_examples():
    m = CutMeasure.uniform_threshold(closed=False)
    assert cut_pseudometric(m, 3, -4) == enumerate_thresholds([3, -4], -10, 10) == 7
    assert cut_pseudometric(m, 4, 4) == 0


def test_complement_close_threshold():
    m = complement_close(CutMeasure.uniform_threshold(closed=False))
    assert m.closed
    assert m.weight(Threshold(3, True)) == 1 and m.weight(Threshold(3, False)) == 1
    for x, y in [(0, 5), (-3, 2), (7, 7)]:
        assert cut_pseudometric(m, x, y) == enumerate_thresholds([x, y], -20, 20, closed=True) == 2 * abs(x - y)


def test_closing_twice_doubles_weights():
    m = complement_close(CutMeasure.uniform_threshold(closed=False))
    mm = complement_close(m)
    assert mm.weight(Threshold(1)) == 2 * m.weight(Threshold(1))
    e = CutMeasure.explicit({Threshold(0, True): 1, Threshold(0, False): 1})
    ee = complement_close(e)
    assert ee.weight(Threshold(0, True)) == 2


def test_closure_factor_two_explicit():
    rng = random.Random(7)
    weights = {}
    for _ in range(30):
        c = Threshold(rng.randint(-10, 10), rng.random() < 0.5)
        weights[c] = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    weights[FiniteCut(frozenset({0, 2}))] = Fraction(3, 2)
    rho = CutMeasure.explicit(weights)
    mu = complement_close(rho)
    assert mu.closed
    for _ in range(100):
        S = set(rng.sample(range(-12, 13), rng.randint(1, 6)))
        before, after = separation_measure(rho, S), separation_measure(mu, S)
        assert before <= after <= 2 * before


def test_closure_factor_two_implicit():
    rng = random.Random(8)
    for rho in (CutMeasure.uniform_threshold(False), CutMeasure.uniform_halfspace(3, False)):
        mu = complement_close(rho)
        for _ in range(100):
            if rho.family.kind == "threshold":
                S = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]
            else:
                S = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(rng.randint(1, 5))]
            b, a = separation_measure(rho, S), separation_measure(mu, S)
            assert b <= a <= 2 * b


def test_enumerate_window_examples():
    m = CutMeasure.uniform_threshold(closed=False)
    rows = enumerate_window(m, {0, 1, 2})
    assert [r.cut for r in rows] == [Threshold(1), Threshold(2)]
    assert [r.weight for r in rows] == [1, 1]
    assert enumerate_window(m, {5}) == []


def test_window_merges_equal_traces():
    m = CutMeasure.uniform_threshold(closed=False)
    rows = enumerate_window(m, {0, 5})
    assert len(rows) == 1
    assert rows[0].cut == Threshold(1) and rows[0].weight == 5


def test_window_budget(monkeypatch):
    monkeypatch.setenv("WREATH_EMBED_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_window(CutMeasure.uniform_threshold(), range(20))


def _window_sum(rows, order, S):
    idx = [order.index(s) for s in S]
    total = Fraction(0)
    for r in rows:
        bits = [(r.mask >> i) & 1 for i in idx]
        if any(bits) and not all(bits):
            total += r.weight
    return total


@pytest.mark.parametrize("closed", [False, True])
def test_threshold_closed_form_matches_window(closed):
    m = CutMeasure.uniform_threshold(closed)
    window = list(range(-10, 11))
    order = window_order(window)
    rows = enumerate_window(m, window)
    rng = random.Random(9)
    for _ in range(500):
        S = rng.sample(window, rng.randint(1, 6))
        assert separation_measure(m, S) == _window_sum(rows, order, S)


def test_halfspace_closed_form_matches_window():
    m = CutMeasure.uniform_halfspace(2, closed=False)
    window = [(i, j) for i in range(-4, 5) for j in range(-4, 5)]
    order = window_order(window)
    rows = enumerate_window(m, window)
    rng = random.Random(10)
    for _ in range(500):
        S = rng.sample(window, rng.randint(1, 5))
        assert separation_measure(m, S) == _window_sum(rows, order, S) == enumerate_halfspaces(S, -4, 4)


def test_pseudometric_axioms_exact():
    rng = random.Random(11)
    weights = {Threshold(t, up): Fraction(rng.randint(1, 5), rng.randint(1, 3)) for t in range(-15, 16) for up in (True, False)}
    m = CutMeasure.explicit(weights)
    pts = [rng.randint(-20, 20) for _ in range(100)]
    for _ in range(2000):
        x, y, z = rng.choices(pts, k=3)
        dxy = cut_pseudometric(m, x, y)
        assert dxy == cut_pseudometric(m, y, x)
        assert cut_pseudometric(m, x, z) <= dxy + cut_pseudometric(m, y, z)


@given(st.sets(st.integers(-20, 20), min_size=1, max_size=6), st.sets(st.integers(-20, 20), max_size=4))
def test_separation_monotone(S, extra):
    for m in (CutMeasure.uniform_threshold(False), CutMeasure.uniform_threshold(True)):
        assert separation_measure(m, S) <= separation_measure(m, S | extra)


def test_translations():
    assert Threshold(2, False).translate(3) == Threshold(5, False)
    assert Halfspace(1, 0).translate((4, -2)) == Halfspace(1, -2)
    c = FiniteCut(frozenset({0, 1}), group=Group.integers()).translate(5)
    assert c.members == {5, 6}
