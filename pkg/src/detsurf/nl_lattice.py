"""Rank-2 lattices of quartic K3 surfaces and Noether-Lefschetz divisor degrees.

A quartic with Picard lattice spanned by the hyperplane class H (H^2 = 4) and
a class K with K^2 = 2h - 2, H.K = d has Gram matrix [[4, d], [d, 2h - 2]],
discriminant Delta = d^2 - 8h + 8 and coset delta = d mod 4. Cosets 1 and 3
describe isomorphic polarized lattices (swap K for -K + kH), so they are
merged into the canonical coset 1.

Divisors D_{h,d} are integer combinations of the lattice divisors
P_{Delta,delta}; the degrees of the D's on a general pencil of quartics are
read off a modular form, and the degree of a single P follows by peeling off
the lower terms of the combination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from detsurf.cohomology import build_resolution, curve_degree_genus
from detsurf.pairs import AdmissiblePair, enumerate_classes, shift_normalize


class OutOfTableError(LookupError):
    """The requested Noether-Lefschetz number lies beyond the stored coefficients."""


# Coefficients of Theta - Psi = -1 + 320 q^(9/8) + 5016 q^(3/2) + 76950 q^2
#                               + 136512 q^(17/8) + 640224 q^(5/2) + ...
# keyed by Delta = 8 * exponent. Every other Delta in 1..20 has coefficient 0.
NL_COEFFICIENTS = {9: 320, 12: 5016, 16: 76950, 17: 136512, 20: 640224}
NL_TABLE_LIMIT = 20


def delta_of(h: int, d: int) -> int:
    return d * d - 8 * h + 8


def canonical_coset(d: int) -> int:
    r = d % 4
    return 1 if r == 3 else r


@dataclass(frozen=True, order=True)
class LatticeInvariants:
    delta_disc: int
    coset: int

    def __post_init__(self):
        if self.coset not in (0, 1, 2):
            raise ValueError(f"coset must be canonical (0, 1 or 2), got {self.coset}")
        if (self.delta_disc - self.coset**2) % 8:
            raise ValueError(
                f"no lattice with discriminant {self.delta_disc} and coset {self.coset}"
            )

    @classmethod
    def of(cls, h: int, d: int) -> LatticeInvariants:
        return cls(delta_of(h, d), canonical_coset(d))


@dataclass(frozen=True)
class RankTwoLattice:
    h: int
    d: int

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((4, self.d), (self.d, 2 * self.h - 2))

    @property
    def discriminant(self) -> int:
        (p, q), (_, s) = self.gram
        return -(p * s - q * q)


def representative(inv: LatticeInvariants) -> RankTwoLattice:
    """The lattice with d = coset and h solving d^2 - 8h + 8 = Delta."""
    if inv.delta_disc <= 0:
        raise ValueError(f"discriminant must be positive, got {inv.delta_disc}")
    d0 = inv.coset
    h0 = (d0 * d0 - inv.delta_disc) // 8 + 1
    lat = RankTwoLattice(h0, d0)
    assert delta_of(h0, d0) == inv.delta_disc == lat.discriminant
    return lat


def _exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def mu(h: int, d: int, inv: LatticeInvariants) -> int:
    """Number of classes D with D^2 = 2h - 2 and H.D = d in the lattice of ``inv``.

    In the basis (H, K) of the representative, D = xH + yK gives
    4 D^2 = (H.D)^2 - Delta' y^2, so y^2 = Delta(h, d) / Delta' and
    x = (d - d0 y) / 4 must be integral.
    """
    big = delta_of(h, d)
    if big <= 0:
        raise ValueError(f"Delta({h}, {d}) = {big} is not positive")
    if big % inv.delta_disc:
        return 0
    y = _exact_sqrt(big // inv.delta_disc)
    if y is None:
        return 0
    d0 = representative(inv).d
    return sum(1 for s in (y, -y) if (d - d0 * s) % 4 == 0)


@dataclass(frozen=True)
class DivisorExpansion:
    h: int
    d: int
    terms: dict[LatticeInvariants, int] = field(hash=False)

    def __str__(self) -> str:
        body = " + ".join(
            (f"{m}*" if m != 1 else "") + f"P[{k.delta_disc},{k.coset}]"
            for k, m in sorted(self.terms.items(), reverse=True)
        )
        return f"D[{self.h},{self.d}] = {body}"


def expand_divisor(h: int, d: int) -> DivisorExpansion:
    """D_{h,d} as a combination of the P_{Delta',delta'}."""
    big = delta_of(h, d)
    if big <= 0:
        raise ValueError(f"Delta({h}, {d}) = {big} is not positive")
    terms: dict[LatticeInvariants, int] = {}
    for y in range(1, isqrt(big) + 1):
        if big % (y * y):
            continue
        small = big // (y * y)
        for coset in (0, 1, 2):
            if (small - coset * coset) % 8:
                continue
            inv = LatticeInvariants(small, coset)
            m = mu(h, d, inv)
            if m:
                terms[inv] = m
    top = LatticeInvariants.of(h, d)
    if terms.get(top, 0) < 1:
        raise AssertionError(f"top term {top} missing from expansion of D[{h},{d}]")
    return DivisorExpansion(h, d, terms)


def nl_number(h: int, d: int) -> int:
    """Degree of D_{h,d} on a general pencil of quartics."""
    big = delta_of(h, d)
    if big <= 0:
        raise ValueError(f"Delta({h}, {d}) = {big} is not positive")
    if big > NL_TABLE_LIMIT:
        raise OutOfTableError(f"Delta = {big} exceeds the stored coefficients (<= {NL_TABLE_LIMIT})")
    return NL_COEFFICIENTS.get(big, 0)


@dataclass(frozen=True)
class PeelStep:
    """One inversion step: deg P(inv) = (NL(witness) - sum(lower)) / mu_top."""

    inv: LatticeInvariants
    witness: tuple[int, int]
    nl: int
    mu_top: int
    lower: tuple[tuple[LatticeInvariants, int, int], ...]  # (inv', mu, deg P(inv'))
    degree: int


def degree_P(inv: LatticeInvariants, witness_h: int, witness_d: int) -> int:
    return peel(inv, witness_h, witness_d).degree


def peel(inv: LatticeInvariants, witness_h: int, witness_d: int) -> PeelStep:
    if LatticeInvariants.of(witness_h, witness_d) != inv:
        raise ValueError(f"witness ({witness_h}, {witness_d}) does not have invariants {inv}")
    return _peel(inv, witness_h, witness_d)


@lru_cache(maxsize=None)
def _peel(inv: LatticeInvariants, h: int, d: int) -> PeelStep:
    exp = expand_divisor(h, d)
    lower = []
    for term, m in sorted(exp.terms.items()):
        if term == inv:
            continue
        rep = representative(term)
        lower.append((term, m, _peel(term, rep.h, rep.d).degree))
    nl = nl_number(h, d)
    m_top = exp.terms[inv]
    num = nl - sum(m * deg for _, m, deg in lower)
    q, r = divmod(num, m_top)
    if r or q < 0:
        raise ArithmeticError(
            f"P{inv} from D[{h},{d}]: ({nl} - {nl - num}) / {m_top} is not a nonnegative integer"
        )
    return PeelStep(inv, (h, d), nl, m_top, tuple(lower), q)


# --------------------------------------------------------------------------
# the five determinantal quartic divisors

# Normalized (a_1 = 5) pairs as conventionally labelled F1..F5. Each lies in a
# distinct transpose class of degree 4; the label fixes which member supplies
# the curve C (the two members give C and 5H - C, with the same lattice).
QUARTIC_LABELS: tuple[tuple[str, AdmissiblePair], ...] = (
    ("F1", AdmissiblePair((5, 5, 5, 5), (6, 6, 6, 6))),
    ("F2", AdmissiblePair((5, 6, 6), (7, 7, 7))),
    ("F3", AdmissiblePair((5, 5), (7, 7))),
    ("F4", AdmissiblePair((5, 5), (6, 8))),
    ("F5", AdmissiblePair((5, 6), (7, 8))),
)


@dataclass(frozen=True)
class QuarticDivisor:
    label: str
    pair: AdmissiblePair
    d_C: int
    g_C: int
    delta: int
    coset: int
    degree: int
    steps: PeelStep

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "a": list(self.pair.a),
            "b": list(self.pair.b),
            "d_C": self.d_C,
            "g_C": self.g_C,
            "delta": self.delta,
            "coset": self.coset,
            "degree": self.degree,
        }


def quartic_record(label: str, p: AdmissiblePair) -> QuarticDivisor:
    dC, gC = curve_degree_genus(build_resolution(p))
    inv = LatticeInvariants.of(gC, dC)
    step = peel(inv, gC, dC)
    return QuarticDivisor(
        label, shift_normalize(p, 5), dC, gC, inv.delta_disc, inv.coset, step.degree, step
    )


def quartic_divisor_degrees() -> list[QuarticDivisor]:
    classes = enumerate_classes(4)
    if len(classes) != len(QUARTIC_LABELS):
        raise AssertionError(f"expected {len(QUARTIC_LABELS)} quartic classes, found {len(classes)}")
    out = []
    for label, p in QUARTIC_LABELS:
        hits = [c for c in classes if p in c]
        if len(hits) != 1:
            raise AssertionError(f"{label} {p} matches {len(hits)} classes")
        out.append(quartic_record(label, p))
    if len({id(c) for label, p in QUARTIC_LABELS for c in classes if p in c}) != len(classes):
        raise AssertionError("quartic labels do not cover every class")
    return out
