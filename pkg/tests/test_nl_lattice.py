from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detsurf.nl_lattice import (
    LatticeInvariants,
    OutOfTableError,
    canonical_coset,
    degree_P,
    delta_of,
    expand_divisor,
    mu,
    nl_number,
    peel,
    quartic_divisor_degrees,
    quartic_record,
    representative,
)
from detsurf.pairs import AdmissiblePair, enumerate_classes, transpose_dual

L = LatticeInvariants


def brute_mu(h: int, d: int, inv: LatticeInvariants, box: int = 60) -> int:
    """Search D = xH + yK in the representative lattice directly."""
    lat = representative(inv)
    (g00, g01), (_, g11) = lat.gram
    n = 0
    for x, y in product(range(-box, box + 1), repeat=2):
        if g00 * x + g01 * y == d and g00 * x * x + 2 * g01 * x * y + g11 * y * y == 2 * h - 2:
            n += 1
    return n


def valid_invariants(limit=400):
    return [L(D, c) for D in range(1, limit + 1) for c in (0, 1, 2) if (D - c * c) % 8 == 0]


def test_delta_examples():
    assert delta_of(23, 14) == 20
    assert delta_of(31, 16) == 16
    assert delta_of(1, 2) == 4


def test_canonical_coset_examples():
    assert canonical_coset(16) == 0
    assert canonical_coset(14) == 2
    assert canonical_coset(17) == 1
    assert canonical_coset(15) == 1


def test_invariants_validation():
    with pytest.raises(ValueError):
        L(16, 1)
    with pytest.raises(ValueError):
        L(16, 3)


def test_representative_examples():
    r = representative(L(16, 0))
    assert (r.h, r.d, r.gram) == (-1, 0, ((4, 0), (0, -4)))
    r = representative(L(1, 1))
    assert (r.h, r.d, r.gram) == (1, 1, ((4, 1), (1, 0)))
    r = representative(L(20, 2))
    assert (r.h, r.d) == (-1, 2)
    with pytest.raises(ValueError):
        representative(L(-8, 0))


@pytest.mark.parametrize("inv", valid_invariants())
def test_representative_roundtrip(inv):
    r = representative(inv)
    assert delta_of(r.h, r.d) == inv.delta_disc == r.discriminant


def test_mu_examples():
    assert mu(31, 16, L(16, 0)) == 2
    assert mu(1, 1, L(1, 1)) == 1
    assert mu(31, 16, L(12, 2)) == 0  # 16/12 not a square


@pytest.mark.parametrize(
    "h,d,inv",
    [(31, 16, L(16, 0)), (31, 16, L(4, 2)), (31, 16, L(1, 1)), (1, 1, L(1, 1)),
     (36, 17, L(9, 1)), (36, 17, L(1, 1)), (23, 14, L(20, 2)), (1, 2, L(4, 2))],
)
def test_mu_matches_lattice_search(h, d, inv):
    assert mu(h, d, inv) == brute_mu(h, d, inv)


@given(st.integers(-30, 30), st.integers(-20, 40), st.sampled_from(valid_invariants(40)))
def test_mu_range_and_square_rule(h, d, inv):
    if delta_of(h, d) <= 0:
        return
    m = mu(h, d, inv)
    assert m in (0, 1, 2)
    if m:
        q, r = divmod(delta_of(h, d), inv.delta_disc)
        assert r == 0 and int(q**0.5 + 0.5) ** 2 == q
        assert (inv.delta_disc - inv.coset**2) % 8 == 0


def test_expand_examples():
    assert expand_divisor(31, 16).terms == {L(16, 0): 2, L(4, 2): 2, L(1, 1): 2}
    assert expand_divisor(1, 2).terms == {L(4, 2): 2, L(1, 1): 2}
    assert expand_divisor(35, 17).terms == {L(17, 1): 1}
    assert expand_divisor(23, 14).terms == {L(20, 2): 2}
    assert expand_divisor(40, 18).terms == {L(12, 2): 2}
    with pytest.raises(ValueError):
        expand_divisor(3, 0)


def test_sixteen_zero_is_half_the_difference():
    top = expand_divisor(31, 16).terms
    low = expand_divisor(1, 2).terms
    diff = {k: top.get(k, 0) - low.get(k, 0) for k in set(top) | set(low)}
    assert {k: v for k, v in diff.items() if v} == {L(16, 0): 2}


@given(st.integers(-30, 30), st.integers(-20, 40))
def test_expansion_contains_top_term(h, d):
    if delta_of(h, d) <= 0:
        return
    exp = expand_divisor(h, d)
    assert exp.terms[L.of(h, d)] >= 1
    assert all(v in (1, 2) for v in exp.terms.values())


def test_nl_number_examples():
    assert nl_number(31, 16) == 76950
    assert nl_number(1, 2) == 0
    assert nl_number(23, 14) == 640224
    with pytest.raises(OutOfTableError):
        nl_number(0, 5)  # Delta = 33
    with pytest.raises(ValueError):
        nl_number(3, 0)


def test_degree_P_examples():
    assert degree_P(L(16, 0), 31, 16) == 38475
    assert degree_P(L(20, 2), 23, 14) == 320112
    assert degree_P(L(9, 1), 36, 17) == 320
    with pytest.raises(ValueError):
        degree_P(L(16, 0), 23, 14)


def test_peel_records_the_worked_identity():
    step = peel(L(16, 0), 31, 16)
    assert (step.nl, step.mu_top) == (76950, 2)
    assert sum(m * deg for _, m, deg in step.lower) == nl_number(1, 2) == 0
    assert (step.nl - 0) // 2 == step.degree == 38475


@pytest.mark.parametrize("inv", [L(16, 0), L(9, 1), L(12, 2), L(17, 1), L(20, 2), L(4, 2), L(1, 1)])
def test_degree_P_is_witness_independent(inv):
    witnesses = [
        (h, d) for d in range(-12, 13) for h in range(-20, 30)
        if delta_of(h, d) == inv.delta_disc and canonical_coset(d) == inv.coset
    ]
    assert len(witnesses) > 1
    assert len({degree_P(inv, h, d) for h, d in witnesses}) == 1


def test_quartic_degrees():
    got = {q.label: (q.d_C, q.g_C, q.delta, q.degree) for q in quartic_divisor_degrees()}
    assert got == {
        "F1": (14, 23, 20, 320112),
        "F2": (17, 35, 17, 136512),
        "F3": (16, 31, 16, 38475),
        "F4": (17, 36, 9, 320),
        "F5": (18, 40, 12, 2508),
    }
    assert 2 * got["F1"][3] == 640224


def test_quartic_degree_independent_of_class_member():
    for c in enumerate_classes(4):
        a = quartic_record("x", c.representative)
        b = quartic_record("x", transpose_dual(c.representative))
        assert (a.delta, a.coset, a.degree) == (b.delta, b.coset, b.degree)
