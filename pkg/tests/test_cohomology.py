import pytest

from detsurf import kernels
from detsurf.arith import TwistSum, binom
from detsurf.cohomology import (
    Classification,
    InvariantError,
    Resolution,
    ambient_dim,
    batch_dims,
    build_resolution,
    closed_form_check,
    component_report,
    component_table,
    curve_degree_genus,
    curve_h0_h1,
    dim_det,
    extremal_pairs,
    format_multiset,
    h0_OXC,
    hilbert_dim,
    ideal_h0,
    parse_multiset,
    verify_conjecture,
)
from detsurf.pairs import AdmissiblePair, conic_pair, enumerate_pairs, line_pair, linear_pair

P = AdmissiblePair
F1 = P((5, 5, 5, 5), (6, 6, 6, 6))
F3 = P((5, 5), (7, 7))
F4 = P((5, 5), (6, 8))
F5 = P((5, 6), (7, 8))


def res(A, B, d):
    return Resolution(TwistSum(A), TwistSum(B), d)


def test_build_resolution_examples():
    r = build_resolution(P((0, 0), (1, 3)))
    assert (r.A.twists, r.B.twists, r.d) == ((4, 5, 5), (6, 8), 4)
    r = build_resolution(F5)
    assert (r.A.twists, r.B.twists) == ((4, 5, 6), (7, 8))
    for d in range(3, 8):
        r = build_resolution(linear_pair(d))
        assert r.A.twists == (d,) + (d + 1,) * d
        assert r.B.twists == (d + 2,) * d


def test_build_resolution_rejects_unreduced():
    with pytest.raises(ValueError):
        build_resolution(P((0, 1), (1, 4)))


def test_resolution_balance():
    for p in enumerate_pairs(7):
        r = build_resolution(p)
        assert sum(r.A) == sum(r.B)
        assert min(r.B) > max(r.A)


@pytest.mark.parametrize(
    "pair,dC,gC",
    [(F1, 14, 23), (P((5, 6, 6), (7, 7, 7)), 17, 35), (F3, 16, 31), (F4, 17, 36), (F5, 18, 40)],
)
def test_degree_genus_quartic_rows(pair, dC, gC):
    assert curve_degree_genus(build_resolution(pair)) == (dC, gC)


@pytest.mark.parametrize("d", range(3, 15))
def test_degree_genus_linear(d):
    dC, gC = curve_degree_genus(build_resolution(linear_pair(d)))
    assert 2 * dC == d * (d + 3)
    assert 6 * gC == (d - 1) * (2 * d * d + 5 * d - 6)


def test_degree_genus_rejects_inconsistent_twists():
    with pytest.raises(InvariantError):
        curve_degree_genus(res([1], [2], 1))


def test_hilbert_dim_examples():
    assert hilbert_dim(build_resolution(F1)) == 104 + 0 - 33 - 16 + 1 == 56
    assert hilbert_dim(build_resolution(F4)) == 93 + 0 - 13 - 12 + 1 == 69


def test_ideal_h0_examples():
    r = build_resolution(F4)
    assert ideal_h0(r, 4) == 1
    assert ideal_h0(r, 3) == 0
    assert ideal_h0(r, min(r.A) - 1) == 0


def test_curve_h0_h1_examples():
    r = res([5, 6, 6], [7, 10], 5)
    assert curve_degree_genus(r) == (26, 80)
    assert curve_h0_h1(r, 5) == (55, 4)
    r3 = build_resolution(F3)
    assert r3.A.twists == (4, 5, 5) and r3.B.twists == (7, 7)
    assert curve_h0_h1(r3, 4) == (34, 0)
    rr = build_resolution(F1)
    assert curve_h0_h1(rr, max(rr.B))[1] == 0


def test_h0_OXC_examples():
    assert h0_OXC(build_resolution(F1)) == 24
    assert h0_OXC(build_resolution(F4)) == 37
    r = build_resolution(P((0, 0), (1, 2)))
    assert curve_degree_genus(r) == (10, 12)
    assert h0_OXC(r) == 22


@pytest.mark.parametrize("d", range(3, 13))
def test_dim_linear(d):
    assert dim_det(linear_pair(d)) == 2 * d * d + 1


def test_every_quartic_class_is_a_divisor():
    for p in enumerate_pairs(4):
        assert dim_det(p) == 33


@pytest.mark.parametrize("d", range(4, 13))
def test_line_and_conic(d):
    assert dim_det(line_pair(d)) == binom(d + 3, 3) - 1 - (d - 3)
    if d >= 5:
        assert ambient_dim(d) - dim_det(conic_pair(d)) == 2 * d - 7


def test_component_report_examples():
    r = component_report(conic_pair(6))
    assert r.codim == 5
    r = component_report(linear_pair(5))
    assert (r.codim, r.curve.kappa, r.classification) == (4, 0, Classification.GENERAL)
    r = component_report(line_pair(5))
    assert (r.codim, r.curve.kappa, r.classification) == (2, 2, Classification.SPECIAL)
    assert r.curve.h1_Od == 4 and r.curve.h1_normal == 6
    r = component_report(linear_pair(3))
    assert (r.codim, r.classification) == (0, Classification.WHOLE_SPACE)


def test_component_report_shift_invariant():
    assert component_report(F4) == component_report(P((0, 0), (1, 3)))


def test_extremal_pairs_examples():
    _, pmax = extremal_pairs(5, 2)
    assert pmax == P((0, 3), (4, 4))
    pmin, _ = extremal_pairs(6, 3)
    assert pmin == P((0, 0, 0), (2, 2, 2))
    pmin, pmax = extremal_pairs(4, 4)
    assert pmin == pmax == linear_pair(4)
    with pytest.raises(ValueError):
        extremal_pairs(4, 5)


def test_closed_form_examples():
    assert closed_form_check(5, 2)
    _, pmax = extremal_pairs(5, 2)
    assert ambient_dim(5) - dim_det(pmax) == 2 * 1 * (15 - 4 - 5) // 6 == 2
    assert closed_form_check(6, 3)
    pmin, _ = extremal_pairs(6, 3)
    assert dim_det(pmin) == 73
    for d in range(3, 10):
        assert closed_form_check(d, d)
        assert ambient_dim(d) - dim_det(linear_pair(d)) == binom(d - 1, 3)


def test_verify_conjecture_small():
    cells = verify_conjecture(9)
    assert all(c.passed for c in cells)
    for c in cells:
        if c.t == c.d:
            assert c.dim_min == c.dim_max == 2 * c.d * c.d + 1


def test_multiset_format_roundtrip():
    assert format_multiset([4, 2, 4, 3, 4, 4, 4, 4]) == "2, 3, 6:4"
    assert parse_multiset("2, 3, 6:4") == (2, 3, 4, 4, 4, 4, 4, 4)
    assert format_multiset([0]) == "0"


def test_component_table_examples():
    row = component_table(5)
    assert row.count == 8 and row.multiset() == "2, 3, 6:4"
    row = component_table(3)
    assert row.codims == (0,) and row.count == 1


@pytest.mark.parametrize("impl", [kernels.batch_dim_det_numpy, kernels.batch_dim_det_numba])
def test_batch_kernels_match_exact(impl, monkeypatch):
    monkeypatch.setattr(kernels, "batch_dim_det", impl)
    pairs = [p for d in range(3, 13) for p in enumerate_pairs(d)]
    assert batch_dims(pairs) == [dim_det(p) for p in pairs]


def test_batch_falls_back_to_exact_beyond_int64_limit(monkeypatch):
    monkeypatch.setattr(kernels, "INT64_DEGREE_LIMIT", 5)
    pairs = enumerate_pairs(7)[:20]
    assert batch_dims(pairs) == [dim_det(p) for p in pairs]
