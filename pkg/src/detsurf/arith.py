"""Exact counting primitives on projective 3-space.

Twist convention: a stored value ``m`` stands for the summand O(-m), so a
map O(-x) -> O(-y) is a form of degree x - y.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable


def binom(n: int, k: int) -> int:
    """Binomial coefficient with binom(n, k) = 0 whenever n < k (also n < 0)."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if n < k:
        return 0
    return math.comb(n, k)


def h0_twist(m: int) -> int:
    """Dimension of H^0(P^3, O(m)): the number of degree-m monomials in 4 variables."""
    return binom(m + 3, 3) if m >= 0 else 0


@dataclass(frozen=True)
class TwistSum:
    """Direct sum of line bundles, stored as the sorted multiset of twists m for O(-m)."""

    twists: tuple[int, ...]

    def __init__(self, twists: Iterable[int]):
        ts = tuple(sorted(int(m) for m in twists))
        if not ts:
            raise ValueError("TwistSum must be nonempty")
        object.__setattr__(self, "twists", ts)

    def __len__(self) -> int:
        return len(self.twists)

    def __iter__(self):
        return iter(self.twists)

    def __add__(self, other: TwistSum) -> TwistSum:
        return TwistSum(self.twists + other.twists)

    def counts(self) -> Counter:
        return Counter(self.twists)


def hom_dim(X: TwistSum | Iterable[int], Y: TwistSum | Iterable[int]) -> int:
    """h^0 of Hom(X, Y): sum over ordered summand pairs of h0_twist(x - y)."""
    cx = Counter(X)
    cy = Counter(Y)
    return sum(nx * ny * h0_twist(x - y) for x, nx in cx.items() for y, ny in cy.items())
