"""Numerical invariants of the families det(a, b).

A reduced pair (a, b) of degree d, shifted so that a_1 = d + 1 and extended
by a_0 = d, is the Betti data of an ACM curve C on a general surface X of the
family:

    0 -> B = (+) O(-b_j) -> A = (+) O(-a_i) -> I_C -> 0

Everything here (degree and genus of C, Hilbert scheme dimension, the
dimension of det(a, b), codimension, kappa) is an exact integer function of
these twists.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from detsurf import kernels
from detsurf.arith import TwistSum, binom, h0_twist, hom_dim
from detsurf.pairs import (
    AdmissiblePair,
    PairClass,
    enumerate_classes,
    is_reduced,
    shift_normalize,
)


class InvariantError(ArithmeticError):
    """An exact identity that must hold for valid input failed."""


@dataclass(frozen=True)
class Resolution:
    A: TwistSum
    B: TwistSum
    d: int

    @property
    def t(self) -> int:
        return len(self.B)


@dataclass(frozen=True)
class CurveInvariants:
    d_C: int
    g_C: int
    h1_Od: int
    kappa: int
    h1_normal: int


class Classification(str, enum.Enum):
    GENERAL = "General"
    SPECIAL = "Special"
    WHOLE_SPACE = "WholeSpace"


@dataclass(frozen=True)
class ComponentReport:
    pair: AdmissiblePair
    d: int
    t: int
    curve: CurveInvariants
    hilbert_dim: int
    dim_det: int
    codim: int
    h0_OXC: int
    classification: Classification

    def as_dict(self) -> dict:
        return {
            "a": list(self.pair.a),
            "b": list(self.pair.b),
            "d": self.d,
            "t": self.t,
            "d_C": self.curve.d_C,
            "g_C": self.curve.g_C,
            "h1_Od": self.curve.h1_Od,
            "kappa": self.curve.kappa,
            "h1_normal": self.curve.h1_normal,
            "hilbert_dim": self.hilbert_dim,
            "dim": self.dim_det,
            "codim": self.codim,
            "h0_OXC": self.h0_OXC,
            "classification": self.classification.value,
        }


def ambient_dim(d: int) -> int:
    """dim |O(d)| = h^0(O(d)) - 1."""
    return h0_twist(d) - 1


def build_resolution(p: AdmissiblePair) -> Resolution:
    if not is_reduced(p):
        raise ValueError(f"pair is not reduced (b_1 <= a_t): {p}")
    d = p.d
    q = shift_normalize(p, d + 1)
    return Resolution(TwistSum((d,) + q.a), TwistSum(q.b), d)


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise InvariantError(f"{what}: {num}/{den} is not integral")
    return q


def curve_degree_genus(r: Resolution) -> tuple[int, int]:
    dC = _exact_div(sum(x * x for x in r.B) - sum(x * x for x in r.A), 2, "curve degree")
    s3 = _exact_div(sum(x**3 for x in r.B) - sum(x**3 for x in r.A), 6, "curve genus")
    return dC, 1 + s3 - 2 * dC


def hilbert_dim(r: Resolution) -> int:
    """Dimension of the family of ACM curves with this resolution."""
    return hom_dim(r.B, r.A) + hom_dim(r.A, r.B) - hom_dim(r.A, r.A) - hom_dim(r.B, r.B) + 1


def ideal_h0(r: Resolution, k: int) -> int:
    """h^0(I_C(k)) from the resolution (exact on global sections)."""
    val = sum(h0_twist(k - x) for x in r.A) - sum(h0_twist(k - y) for y in r.B)
    if val < 0:
        raise InvariantError(f"h0(I_C({k})) = {val} < 0")
    return val


def curve_h0_h1(r: Resolution, k: int) -> tuple[int, int]:
    """(h^0, h^1) of O_C(k); h^1 by Riemann-Roch."""
    dC, gC = curve_degree_genus(r)
    h0 = h0_twist(k) - ideal_h0(r, k)
    h1 = h0 - (k * dC + 1 - gC)
    if h0 < 0 or h1 < 0:
        raise InvariantError(f"negative cohomology of O_C({k}): h0={h0}, h1={h1}")
    return h0, h1


def h0_OXC(r: Resolution) -> int:
    """h^0(X, O_X(C)) = binom(d-1, 3) + g_C - (d-4) d_C."""
    dC, gC = curve_degree_genus(r)
    val = binom(r.d - 1, 3) + gC - (r.d - 4) * dC
    if val < 1:
        raise InvariantError(f"h0(O_X(C)) = {val} < 1")
    return val


def _dim_from_resolution(r: Resolution) -> int:
    dC, gC = curve_degree_genus(r)
    d = r.d
    return (
        2
        + hom_dim(r.B, r.A)
        - hom_dim(r.A, r.A)
        - hom_dim(r.B, r.B)
        - binom(d - 1, 3)
        - gC
        + (d - 4) * dC
    )


def dim_det(p: AdmissiblePair) -> int:
    """Dimension of det(a, b) in |O(d)|.

    Cross-checked against dim H_{a,b} - dim |O_X(C)|; a mismatch raises.
    """
    r = build_resolution(p)
    val = _dim_from_resolution(r)
    alt = hilbert_dim(r) - (h0_OXC(r) - 1)
    if val != alt:
        raise InvariantError(f"dimension formulas disagree for {p}: {val} != {alt}")
    return val


def codim(p: AdmissiblePair) -> int:
    return ambient_dim(p.d) - dim_det(p)


def classify(d: int, codimension: int) -> Classification:
    if codimension == 0:
        return Classification.WHOLE_SPACE
    if codimension == binom(d - 1, 3):
        return Classification.GENERAL
    return Classification.SPECIAL


def component_report(p: AdmissiblePair) -> ComponentReport:
    r = build_resolution(p)
    d = r.d
    dC, gC = curve_degree_genus(r)
    dim = dim_det(p)
    cd = ambient_dim(d) - dim
    top = binom(d - 1, 3)
    kappa = top - cd
    if kappa < 0:
        raise InvariantError(f"kappa = {kappa} < 0 for {p}")
    if not d - 3 <= cd <= top:
        raise InvariantError(f"codim {cd} of {p} violates {d - 3} <= codim <= {top}")
    _, h1 = curve_h0_h1(r, d)
    return ComponentReport(
        pair=shift_normalize(p, 0),
        d=d,
        t=r.t,
        curve=CurveInvariants(dC, gC, h1, kappa, kappa + h1),
        hilbert_dim=hilbert_dim(r),
        dim_det=dim,
        codim=cd,
        h0_OXC=h0_OXC(r),
        classification=classify(d, cd),
    )


# --------------------------------------------------------------------------
# extremal pairs and their closed forms


def extremal_pairs(d: int, t: int) -> tuple[AdmissiblePair, AdmissiblePair]:
    """(min, max) pairs of degree d and length t."""
    if not 2 <= t <= d:
        raise ValueError(f"need 2 <= t <= d, got d={d}, t={t}")
    k, rem = divmod(d, t)
    pmin = AdmissiblePair((0,) * t, (k,) * (t - rem) + (k + 1,) * rem)
    pmax = AdmissiblePair((0,) + (d - t,) * (t - 1), (d - t + 1,) * t)
    return pmin, pmax


def max_codim_closed_form(d: int, t: int) -> int:
    if t == d:
        return binom(d - 1, 3)
    num = t * (t - 1) * (3 * d - 2 * t - 5)
    return _exact_div(num, 6, "max-pair codimension")


def min_dim_closed_form(d: int, t: int) -> int:
    k, rem = divmod(d, t)
    return binom(k - 1, 3) * t * t + binom(k - 1, 2) * rem * t + 2 * d * d + 1


def closed_form_check(d: int, t: int) -> bool:
    pmin, pmax = extremal_pairs(d, t)
    return (
        ambient_dim(d) - dim_det(pmax) == max_codim_closed_form(d, t)
        and dim_det(pmin) == min_dim_closed_form(d, t)
    )


# --------------------------------------------------------------------------
# batch evaluation and the min/max sweep


def batch_dims(pairs: list[AdmissiblePair]) -> list[int]:
    """dim_det for many pairs; the int64 kernel for d <= 60, exact ints beyond."""
    out = [0] * len(pairs)
    groups: dict[tuple[int, int], list[int]] = {}
    for idx, p in enumerate(pairs):
        groups.setdefault((p.d, p.t), []).append(idx)
    for (d, t), idxs in groups.items():
        if d > kernels.INT64_DEGREE_LIMIT:
            for i in idxs:
                out[i] = dim_det(pairs[i])
            continue
        A = np.empty((len(idxs), t + 1), dtype=np.int64)
        B = np.empty((len(idxs), t), dtype=np.int64)
        for row, i in enumerate(idxs):
            q = shift_normalize(pairs[i], d + 1)
            A[row, 0] = d
            A[row, 1:] = q.a
            B[row] = q.b
        for i, v in zip(idxs, kernels.batch_dim_det(A, B, d)):
            out[i] = int(v)
    return out


@dataclass
class ConjectureCell:
    d: int
    t: int
    n_classes: int
    dim_min: int
    dim_max: int
    counterexamples: list[tuple[AdmissiblePair, int]]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_conjecture(d_max: int, d_min: int = 3) -> list[ConjectureCell]:
    """Check dim(min pair) <= dim det(a,b) <= dim(max pair) for every class, cell by cell."""
    if d_max < 3:
        raise ValueError(f"d_max must be at least 3, got {d_max}")
    cells = []
    for d in range(max(3, d_min), d_max + 1):
        classes = enumerate_classes(d)
        reps = [c.representative for c in classes]
        dims = batch_dims(reps)
        by_t: dict[int, list[tuple[AdmissiblePair, int]]] = {}
        for p, v in zip(reps, dims):
            by_t.setdefault(p.t, []).append((p, v))
        for t in range(2, d + 1):
            pmin, pmax = extremal_pairs(d, t)
            lo, hi = dim_det(pmin), dim_det(pmax)
            members = by_t.get(t, [])
            bad = [(p, v) for p, v in members if not lo <= v <= hi]
            cells.append(ConjectureCell(d, t, len(members), lo, hi, bad))
    return cells


# --------------------------------------------------------------------------
# codimension tables


@dataclass(frozen=True)
class TableRow:
    d: int
    codims: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.codims)

    def multiset(self) -> str:
        return format_multiset(self.codims)


def format_multiset(values: Iterable[int]) -> str:
    """Compress sorted values as '2, 3, 6:4' (k:r means r occurs k times)."""
    parts = []
    for v, k in sorted(Counter(values).items()):
        parts.append(f"{k}:{v}" if k > 1 else str(v))
    return ", ".join(parts)


def parse_multiset(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ":" in tok:
            k, v = tok.split(":")
            out.extend([int(v)] * int(k))
        else:
            out.append(int(tok))
    return tuple(sorted(out))


def class_codims(d: int, classes: list[PairClass] | None = None) -> list[tuple[PairClass, int]]:
    if classes is None:
        classes = enumerate_classes(d)
    top = ambient_dim(d)
    return [(c, top - v) for c, v in zip(classes, batch_dims([c.representative for c in classes]))]


def component_table(d: int) -> TableRow:
    """Codimensions of the components; all codim-0 classes collapse to one."""
    codims = [cd for _, cd in class_codims(d)]
    positive = sorted(cd for cd in codims if cd > 0)
    if len(positive) < len(codims):
        positive.insert(0, 0)
    return TableRow(d, tuple(positive))
