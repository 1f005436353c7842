"""Compression moduli and the bound arithmetic for wreath products.

A :class:`Modulus` is a nondecreasing function on the nonnegative integers
with value 0 at 0. Parts in every partition minimum are positive integers,
since word metrics only take integer values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import Callable


class Modulus:
    """Memoized modulus t -> value; values are Fractions or floats."""

    def __init__(self, rule: Callable[[int], Real], name: str = "modulus"):
        self._rule = rule
        self.name = name
        self._memo: dict[int, Real] = {0: Fraction(0)}

    @classmethod
    def power(cls, beta) -> Modulus:
        beta = Fraction(beta)
        if beta.denominator == 1:
            return cls(lambda t: Fraction(t) ** int(beta), f"t^{beta}")
        return cls(lambda t: float(t) ** float(beta), f"t^{beta}")

    @classmethod
    def linear(cls, slope=1) -> Modulus:
        slope = Fraction(slope)
        return cls(lambda t: slope * t, f"{slope}t")

    @classmethod
    def table(cls, values, name: str = "table") -> Modulus:
        """Explicit values for t = 0..len-1; linear extrapolation beyond."""
        vals = [Fraction(v) for v in values]
        if vals[0] != 0:
            raise ValueError("a modulus maps 0 to 0")
        if len(vals) < 2:
            raise ValueError("a table modulus needs values at 0 and 1")
        step = vals[-1] - vals[-2]

        def rule(t):
            if t < len(vals):
                return vals[t]
            return vals[-1] + step * (t - len(vals) + 1)

        return cls(rule, name)

    def __call__(self, t: int):
        if t < 0:
            raise ValueError("moduli are defined on nonnegative integers")
        v = self._memo.get(t)
        if v is None:
            v = self._rule(t)
            self._memo[t] = v
        return v

    def __repr__(self):
        return f"Modulus({self.name})"

    def values(self, upto: int) -> list:
        return [self(t) for t in range(upto + 1)]

    def is_nondecreasing(self, upto: int) -> bool:
        vals = self.values(upto)
        return vals[0] == 0 and all(a <= b for a, b in zip(vals, vals[1:]))

    def rescaled(self) -> Modulus:
        """Scale so that m(1) >= 1; the unboundedness argument relies on it."""
        m1 = self(1)
        if m1 <= 0:
            raise ValueError("cannot rescale a modulus with m(1) = 0")
        if m1 >= 1:
            return self
        k = 1 / m1
        return Modulus(lambda t: k * self(t), f"{self.name}/{m1}")


def _partition_table(m: Modulus, t: int) -> list:
    g = [Fraction(0)] * (t + 1)
    for u in range(1, t + 1):
        g[u] = min(m(s) + g[u - s] for s in range(1, u + 1))
    return g


def partition_min(m: Modulus, t: int):
    """min over compositions t = s_1 + ... + s_n (s_k >= 1) of sum m(s_k)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _partition_table(m, t)[t]


def eta1(xi1: Modulus, tau1: Modulus, t: int):
    """min over 0 <= j <= t of xi1(j) + partition_min(tau1, t - j)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    g = _partition_table(tau1, t)
    return min(xi1(j) + g[t - j] for j in range(t + 1))


def eta1_table(xi1: Modulus, tau1: Modulus, upto: int) -> list:
    g = _partition_table(tau1, upto)
    return [min(xi1(j) + g[t - j] for j in range(t + 1)) for t in range(upto + 1)]


def eta2(xi2: Modulus, tau2: Modulus, t: int):
    """Superlinear upper modulus t (xi2(t) + tau2(t))."""
    return t * (xi2(t) + tau2(t))


def eta2_linear(lipschitz, t: int):
    """Linear replacement for eta2 when the combined map is Lipschitz."""
    return Fraction(lipschitz) * t


def tau1_lift(rho1: Modulus, t: int) -> float:
    """sqrt of the partition minimum of rho1."""
    return math.sqrt(partition_min(rho1, t))


def tau1_table(rho1: Modulus, upto: int) -> list:
    """tau1_lift for t = 0..upto from a single partition table."""
    return [math.sqrt(v) for v in _partition_table(rho1, upto)]


def tau2_upper(rho2: Modulus, t: int):
    """Upper modulus t + t^2 rho2(t) of the lamplighter embedding."""
    return t + t * t * rho2(t)


def nu_moduli(rho1: Modulus, tau1: Modulus, p: float, t: int) -> tuple:
    """(nu1(t), nu2(t)) for the combined embedding into L_p."""
    if p < 1:
        raise ValueError("p must be at least 1")
    e = max(0.5, 1.0 / p)
    xi = Modulus(lambda s: tau1_lift(rho1, s), "tau1_lift")
    nu1 = float(eta1(xi, tau1, t)) ** e
    nu2 = float(t) ** e
    return nu1, nu2


def unboundedness_witness(xi1: Modulus, tau1: Modulus, M: int, search: int = 10_000) -> tuple:
    """Return (N, eta1(M N)) for N the least integer with min(xi1(N), tau1(N)) >= M.

    Both moduli are rescaled first so that their value at 1 is at least 1.
    """
    xi1, tau1 = xi1.rescaled(), tau1.rescaled()
    for N in range(1, search + 1):
        if min(xi1(N), tau1(N)) >= M:
            return N, eta1(xi1, tau1, M * N)
    raise ValueError(f"moduli stay below {M} up to {search}")


# -- exponent arithmetic ---------------------------------------------------------


def _exp_factor(p) -> Fraction:
    p = Fraction(p)
    if p < 1:
        raise ValueError("p must be at least 1")
    return max(Fraction(1, 2), 1 / p)


def thm11_bound(alpha_g, alpha_h, p) -> Fraction:
    """max{1/p, 1/2} * min{alpha_G, alpha_H / (1 + alpha_H)}."""
    aG, aH = Fraction(alpha_g), Fraction(alpha_h)
    for a in (aG, aH):
        if not 0 <= a <= 1:
            raise ValueError("compression exponents lie in [0, 1]")
    return _exp_factor(p) * min(aG, aH / (1 + aH))


@lru_cache(maxsize=None)
def iterated_bound(k: int) -> Fraction:
    """L1 exponent bound for G_1 = Z wr Z, G_{k+1} = Z wr G_k."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return Fraction(1)
    return thm11_bound(1, iterated_bound(k - 1), 1)


# -- brute-force oracles -----------------------------------------------------------


def integer_partitions(t: int, largest: int | None = None):
    """Yield partitions of t as nonincreasing tuples of positive parts."""
    if largest is None:
        largest = t
    if t == 0:
        yield ()
        return
    for first in range(min(t, largest), 0, -1):
        for rest in integer_partitions(t - first, first):
            yield (first,) + rest


def partition_min_bruteforce(m: Modulus, t: int):
    return min(sum((m(s) for s in parts), Fraction(0)) for parts in integer_partitions(t))


def eta1_bruteforce(xi1: Modulus, tau1: Modulus, t: int):
    """Every partition, with each distinct part (or nothing) assigned to xi1."""
    best = None
    for parts in integer_partitions(t):
        total = sum((tau1(s) for s in parts), Fraction(0))
        options = [xi1(0) + total]
        options += [xi1(s) + total - tau1(s) for s in set(parts)]
        v = min(options)
        if best is None or v < best:
            best = v
    return best
