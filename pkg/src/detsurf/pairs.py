"""Admissible pairs (a, b) and their canonical classes.

A pair of length t prescribes a t x t matrix whose (i, j) entry is a form of
degree b_j - a_i. Pairs that differ by a common shift give the same family,
and so do a pair and its transpose dual (a matrix and its transpose share a
determinant). Only *reduced* pairs, where every entry degree is at least 1,
are enumerated by default: a constant or forced-zero entry makes the
determinant either generic or of a smaller type.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class AdmissiblePair:
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __init__(self, a: Iterable[int], b: Iterable[int]):
        a = tuple(int(x) for x in a)
        b = tuple(int(x) for x in b)
        if len(a) != len(b):
            raise ValueError(f"a and b must have equal length, got {len(a)} and {len(b)}")
        if len(a) < 2:
            raise ValueError("admissible pairs have length t >= 2")
        if any(x > y for x, y in zip(a, a[1:])) or any(x > y for x, y in zip(b, b[1:])):
            raise ValueError(f"a and b must be nondecreasing: a={a}, b={b}")
        if any(x >= y for x, y in zip(a, b)):
            raise ValueError(f"need a_i < b_i for every i: a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def t(self) -> int:
        return len(self.a)

    @property
    def d(self) -> int:
        return sum(self.b) - sum(self.a)

    def entry_degree(self, i: int, j: int) -> int:
        return self.b[j] - self.a[i]

    def __str__(self) -> str:
        return f"a={self.a} b={self.b}"


def degree(p: AdmissiblePair) -> int:
    return p.d


def shift_normalize(p: AdmissiblePair, base: int = 0) -> AdmissiblePair:
    """The equivalent pair with a_1 = base."""
    k = base - p.a[0]
    if k == 0:
        return p
    return AdmissiblePair((x + k for x in p.a), (y + k for y in p.b))


def transpose_dual(p: AdmissiblePair) -> AdmissiblePair:
    """Type of the transposed matrix, normalized to a_1 = 0."""
    return shift_normalize(
        AdmissiblePair((-y for y in reversed(p.b)), (-x for x in reversed(p.a))), 0
    )


def is_reduced(p: AdmissiblePair) -> bool:
    """True iff b_1 > a_t, i.e. no entry of the generic matrix is a constant or zero."""
    return p.b[0] > p.a[-1]


@dataclass(frozen=True)
class PairClass:
    representative: AdmissiblePair
    members: tuple[AdmissiblePair, ...]

    @property
    def d(self) -> int:
        return self.representative.d

    @property
    def t(self) -> int:
        return self.representative.t

    def __contains__(self, p: AdmissiblePair) -> bool:
        return shift_normalize(p, 0) in self.members


def canonical(p: AdmissiblePair) -> AdmissiblePair:
    p = shift_normalize(p, 0)
    q = transpose_dual(p)
    return min(p, q, key=_lex_key)


def _lex_key(p: AdmissiblePair):
    return (p.a, p.b)


def _sort_key(p: AdmissiblePair):
    return (p.t, p.a, p.b)


@lru_cache(maxsize=None)
def _nondecreasing(total: int, n: int, lo: int, hi: int) -> tuple[tuple[int, ...], ...]:
    """All nondecreasing n-tuples with entries in [lo, hi] summing to total."""
    if n == 0:
        return ((),) if total == 0 else ()
    out = []
    for v in range(lo, hi + 1):
        if v * n > total:
            break
        for rest in _nondecreasing(total - v, n - 1, v, hi):
            out.append((v,) + rest)
    return tuple(out)


def iter_reduced_pairs(d: int, t: int) -> Iterator[AdmissiblePair]:
    """Reduced pairs of degree d and length t with a_1 = 0.

    With m = a_t, write u_i = m + 1 - a_i (so u_1 = m + 1, u_t = 1) and
    v_j = b_j - m - 1 >= 0; then d = sum(u) + sum(v), which bounds both.
    """
    if t < 2 or t > d:
        return
    for m in range(0, d):
        # smallest possible sum(u) for this m: (m + 1) + 1 * (t - 1)
        if m + t > d:
            break
        for s_mid in range(0, (t - 2) * m + 1):
            u_total = t * (m + 1) - m - s_mid
            if u_total > d:
                continue
            mids = _nondecreasing(s_mid, t - 2, 0, m)
            if not mids:
                continue
            rest = d - u_total
            vs = _nondecreasing(rest, t, 0, rest)
            for mid in mids:
                a = (0,) + mid + (m,)
                for v in vs:
                    yield AdmissiblePair(a, tuple(x + m + 1 for x in v))


def iter_raw_pairs(d: int, t: int, span: int | None = None) -> Iterator[AdmissiblePair]:
    """All admissible pairs of degree d, length t, a_1 = 0 and a_t <= span (default d).

    Without the span cap the set is infinite (a_t can drift arbitrarily far
    once some entry is forced to zero). Intended for inspection only.
    """
    if span is None:
        span = d
    if t < 2 or t > d:
        return

    def rec(i: int, prev_a: int, prev_b: int, left: int, a: list, b: list):
        slots = t - i
        if slots == 0:
            if left == 0:
                yield AdmissiblePair(a, b)
            return
        for ai in range(prev_a, span + 1) if i else (0,):
            for e in range(1, left - (slots - 1) + 1):
                bi = ai + e
                if bi < prev_b:
                    continue
                a.append(ai)
                b.append(bi)
                yield from rec(i + 1, ai, bi, left - e, a, b)
                a.pop()
                b.pop()

    yield from rec(0, 0, -(10**9), d, [], [])


def enumerate_pairs(d: int, t: int | None = None, *, raw: bool = False) -> list[AdmissiblePair]:
    """Normalized (a_1 = 0) pairs of degree d, reduced unless ``raw``."""
    lengths = [t] if t is not None else range(2, d + 1)
    gen = iter_raw_pairs if raw else iter_reduced_pairs
    out = [p for tt in lengths for p in gen(d, tt)]
    out.sort(key=_sort_key)
    return out


def enumerate_classes(d: int, *, transpose_dedup: bool = True, raw: bool = False) -> list[PairClass]:
    """All classes of degree d, sorted by (t, representative).

    Each class merges a normalized pair with its transpose dual, so it has one
    or two members. ``transpose_dedup=False`` keeps every pair as its own class.
    """
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    pairs = enumerate_pairs(d, raw=raw)
    if not transpose_dedup:
        return [PairClass(p, (p,)) for p in pairs]
    groups: dict[AdmissiblePair, set[AdmissiblePair]] = {}
    for p in pairs:
        q = transpose_dual(p)
        rep = min(p, q, key=_lex_key)
        groups.setdefault(rep, set()).update((p, q))
    classes = [
        PairClass(rep, tuple(sorted(members, key=_lex_key))) for rep, members in groups.items()
    ]
    classes.sort(key=lambda c: _sort_key(c.representative))
    return classes


def linear_pair(d: int) -> AdmissiblePair:
    return AdmissiblePair((0,) * d, (1,) * d)


def line_pair(d: int) -> AdmissiblePair:
    return AdmissiblePair((0, 0), (1, d - 1))


def conic_pair(d: int) -> AdmissiblePair:
    return AdmissiblePair((0, 1), (2, d - 1))


def parse_seq(text: str | Sequence[int]) -> tuple[int, ...]:
    """Parse '0,0,1' or '(0, 0, 1)' into a tuple of ints."""
    if not isinstance(text, str):
        return tuple(int(x) for x in text)
    body = text.strip().strip("()[]")
    return tuple(int(x) for x in body.replace(" ", ",").split(",") if x)
