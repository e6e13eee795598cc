from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detsurf.arith import TwistSum, binom, h0_twist, hom_dim


def monomial_count(m: int) -> int:
    """Brute force: number of degree-m monomials in 4 variables."""
    if m < 0:
        return 0
    return sum(1 for _ in combinations_with_replacement(range(4), m))


def brute_hom(X, Y) -> int:
    return sum(monomial_count(x - y) for x, y in product(X, Y))


twist_lists = st.lists(st.integers(-6, 12), min_size=1, max_size=5)


def test_binom_examples():
    assert binom(6, 3) == 20
    assert binom(2, 3) == 0
    assert binom(-4, 3) == 0
    assert binom(4 + 3, 3) == 35  # quartic forms span P^34


def test_binom_rejects_negative_k():
    with pytest.raises(ValueError):
        binom(3, -1)


def test_binom_is_exact_for_large_n():
    assert binom(200, 100) == 90548514656103281165404177077484163874504589675413336841320


@pytest.mark.parametrize("m,expected", [(0, 1), (-1, 0), (2, 10)])
def test_h0_twist_examples(m, expected):
    assert h0_twist(m) == expected
    assert monomial_count(m) == expected


@pytest.mark.parametrize("m", range(-4, 9))
def test_h0_twist_matches_enumeration(m):
    assert h0_twist(m) == monomial_count(m)


def test_twist_sum_sorts_and_rejects_empty():
    assert TwistSum([5, 4, 5]).twists == (4, 5, 5)
    with pytest.raises(ValueError):
        TwistSum([])


@pytest.mark.parametrize("d", range(3, 9))
def test_hom_linear_resolution(d):
    X = [d + 2] * d
    Y = [d] + [d + 1] * d
    assert hom_dim(X, Y) == 4 * d * d + 10 * d


def test_hom_examples():
    assert hom_dim(TwistSum([5, 5]), TwistSum([5, 5])) == 4
    assert hom_dim(TwistSum([6, 8]), TwistSum([4, 5, 5])) == 93
    assert brute_hom([6, 8], [4, 5, 5]) == 10 + 4 + 4 + 35 + 20 + 20


@given(twist_lists, twist_lists)
def test_hom_matches_brute_force(X, Y):
    assert hom_dim(X, Y) == brute_hom(X, Y)


@given(twist_lists)
def test_hom_self_at_least_size(X):
    assert hom_dim(X, X) >= len(X)


@given(twist_lists, twist_lists, twist_lists)
def test_hom_additive(X, Y, Z):
    assert hom_dim(TwistSum(X) + TwistSum(Y), Z) == hom_dim(X, Z) + hom_dim(Y, Z)
    assert hom_dim(Z, TwistSum(X) + TwistSum(Y)) == hom_dim(Z, X) + hom_dim(Z, Y)


@given(st.integers(1, 300))
def test_h0_recursion(m):
    assert h0_twist(m) - h0_twist(m - 1) == binom(m + 2, 2)
