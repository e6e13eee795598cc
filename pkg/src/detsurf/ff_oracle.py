"""Finite-field check of dim det(a, b) that does not use the resolution formulas.

Homogeneous polynomials in x, y, z, w over F_p are dense coefficient vectors.
Monomials of degree k are listed in graded-lexicographic order: exponent
vectors (e_x, e_y, e_z, e_w) sorted lexicographically *descending*, so
degree 2 reads x^2, xy, xz, xw, y^2, yz, yw, z^2, zw, w^2.

The oracle samples a random matrix S of type (a, b) and computes the rank of
the differential of S -> det(S) (entry perturbation E_ij maps to
cofactor_ij(S) * E_ij). The image of det is a cone, so rank - 1 is the
projective dimension of det(a, b) for a generic sample.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from detsurf import kernels
from detsurf.arith import h0_twist
from detsurf.pairs import AdmissiblePair, is_reduced, shift_normalize

DEFAULT_MODULUS = 2147483647
MAX_RESEEDS = 8
MAX_AMBIENT = 10_000


def default_modulus() -> int:
    return int(os.environ.get("DETSURF_MODULUS", DEFAULT_MODULUS))


# --------------------------------------------------------------------------
# small number theory


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    fs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    raise ValueError(f"no primitive root mod {p}")


def fermat_modulus(d: int, above: int = 10_000) -> int:
    """Least prime p > above with p = 1 mod 2d."""
    p = above + 1
    p += (1 - p) % (2 * d)
    while not is_prime(p):
        p += 2 * d
    return p


# --------------------------------------------------------------------------
# monomial indexing


@lru_cache(maxsize=None)
def monomials(k: int) -> np.ndarray:
    """Exponent vectors of degree k in graded-lex order, shape (binom(k+3,3), 4)."""
    rows = [
        (e0, e1, e2, k - e0 - e1 - e2)
        for e0 in range(k, -1, -1)
        for e1 in range(k - e0, -1, -1)
        for e2 in range(k - e0 - e1, -1, -1)
    ]
    out = np.array(rows, dtype=np.int64).reshape(-1, 4)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _index_lookup(k: int) -> np.ndarray:
    """Dense map (e1, e2, e3) -> position among degree-k monomials."""
    lut = np.full((k + 1, k + 1, k + 1), -1, dtype=np.int64)
    mons = monomials(k)
    lut[mons[:, 1], mons[:, 2], mons[:, 3]] = np.arange(len(mons))
    return lut


@lru_cache(maxsize=None)
def mul_table(p: int, q: int) -> np.ndarray:
    """table[i, j] = index of monomial_i(p) * monomial_j(q) in degree p + q."""
    s = monomials(p)[:, None, :] + monomials(q)[None, :, :]
    table = _index_lookup(p + q)[s[..., 1], s[..., 2], s[..., 3]]
    table.setflags(write=False)
    return table


def monomial_index(exps: tuple[int, int, int, int]) -> int:
    k = sum(exps)
    return int(_index_lookup(k)[exps[1], exps[2], exps[3]])


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True, eq=False)
class PrimeFieldPoly:
    modulus: int
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 2 < self.modulus < kernels.MAX_MODULUS:
            raise ValueError(f"modulus must be an odd prime below 2**31, got {self.modulus}")
        c = np.asarray(self.coeffs, dtype=np.int64) % self.modulus
        if c.shape != (h0_twist(self.degree),):
            raise ValueError(
                f"degree {self.degree} needs {h0_twist(self.degree)} coefficients, got {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, modulus: int, degree: int) -> PrimeFieldPoly:
        return cls(modulus, degree, np.zeros(h0_twist(degree), dtype=np.int64))

    @classmethod
    def from_terms(cls, modulus: int, degree: int, terms: dict) -> PrimeFieldPoly:
        """terms maps exponent 4-tuples to coefficients."""
        c = np.zeros(h0_twist(degree), dtype=np.int64)
        for exps, v in terms.items():
            if sum(exps) != degree:
                raise ValueError(f"monomial {exps} is not of degree {degree}")
            c[monomial_index(tuple(exps))] += v
        return cls(modulus, degree, c)

    @classmethod
    def linear(cls, modulus: int, x: int = 0, y: int = 0, z: int = 0, w: int = 0) -> PrimeFieldPoly:
        return cls(modulus, 1, np.array([x, y, z, w], dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def _check(self, other: PrimeFieldPoly) -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: PrimeFieldPoly) -> PrimeFieldPoly:
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("can only add homogeneous polynomials of equal degree")
        return PrimeFieldPoly(self.modulus, self.degree, self.coeffs + other.coeffs)

    def __neg__(self) -> PrimeFieldPoly:
        return PrimeFieldPoly(self.modulus, self.degree, -self.coeffs)

    def __sub__(self, other: PrimeFieldPoly) -> PrimeFieldPoly:
        return self + (-other)

    def scale(self, c: int) -> PrimeFieldPoly:
        return PrimeFieldPoly(self.modulus, self.degree, self.coeffs * (c % self.modulus))

    def __mul__(self, other: PrimeFieldPoly) -> PrimeFieldPoly:
        return poly_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeFieldPoly):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.degree == other.degree
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        terms = []
        for idx in np.flatnonzero(self.coeffs):
            e = monomials(self.degree)[idx]
            mono = "*".join(f"{v}^{n}" if n > 1 else v for v, n in zip("xyzw", e) if n)
            terms.append(f"{self.coeffs[idx]}*{mono or '1'}")
        return f"PrimeFieldPoly(p={self.modulus}, {' + '.join(terms) or '0'})"


def poly_mul(f: PrimeFieldPoly, g: PrimeFieldPoly) -> PrimeFieldPoly:
    f._check(g)
    deg = f.degree + g.degree
    if f.is_zero() or g.is_zero():
        return PrimeFieldPoly.zero(f.modulus, deg)
    out = kernels.poly_mul_coeffs(f.coeffs, g.coeffs, mul_table(f.degree, g.degree), h0_twist(deg), f.modulus)
    return PrimeFieldPoly(f.modulus, deg, out)


def fermat_poly(d: int, modulus: int) -> PrimeFieldPoly:
    return PrimeFieldPoly.from_terms(
        modulus, d, {(d, 0, 0, 0): 1, (0, d, 0, 0): 1, (0, 0, d, 0): 1, (0, 0, 0, d): 1}
    )


# --------------------------------------------------------------------------
# determinantal matrices


@dataclass(frozen=True)
class DetMatrix:
    pair: AdmissiblePair
    entries: tuple[tuple[PrimeFieldPoly, ...], ...]

    def __post_init__(self):
        p = self.pair
        if p.a[0] != 0 or not is_reduced(p):
            raise ValueError(f"DetMatrix needs a reduced pair normalized to a_1 = 0, got {p}")
        t = p.t
        if len(self.entries) != t or any(len(row) != t for row in self.entries):
            raise ValueError(f"entries must form a {t}x{t} grid")
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.degree != p.entry_degree(i, j):
                    raise ValueError(f"entry ({i},{j}) has degree {e.degree}, expected {p.entry_degree(i, j)}")

    @property
    def modulus(self) -> int:
        return self.entries[0][0].modulus

    @property
    def t(self) -> int:
        return self.pair.t


def _minor_det(m: DetMatrix, rows: tuple[int, ...], cols: tuple[int, ...], memo: dict) -> PrimeFieldPoly:
    """Laplace expansion along the first listed row, memoized on (rows, cols)."""
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    p = m.pair
    deg = sum(p.b[j] for j in cols) - sum(p.a[i] for i in rows)
    if len(rows) == 1:
        res = m.entries[rows[0]][cols[0]]
    else:
        res = PrimeFieldPoly.zero(m.modulus, deg)
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            e = m.entries[r0][c]
            if e.is_zero():
                continue
            sub = _minor_det(m, rest, cols[:k] + cols[k + 1 :], memo)
            if sub.is_zero():
                continue
            term = e * sub
            res = res - term if k % 2 else res + term
    memo[key] = res
    return res


def det(m: DetMatrix, memo: dict | None = None) -> PrimeFieldPoly:
    """Determinant by cofactor expansion with memoization over column subsets."""
    if m.t > 8:
        raise ValueError(f"cofactor expansion is limited to t <= 8, got t={m.t}")
    idx = tuple(range(m.t))
    return _minor_det(m, idx, idx, {} if memo is None else memo)


def cofactors(m: DetMatrix, memo: dict | None = None) -> list[list[PrimeFieldPoly]]:
    """cof[i][j] = (-1)^(i+j) det(S without row i and column j)."""
    memo = {} if memo is None else memo
    idx = tuple(range(m.t))
    out = []
    for i in idx:
        rows = idx[:i] + idx[i + 1 :]
        row = []
        for j in idx:
            minor = _minor_det(m, rows, idx[:j] + idx[j + 1 :], memo)
            row.append(-minor if (i + j) % 2 else minor)
        out.append(row)
    return out


def random_matrix(p: AdmissiblePair, modulus: int, rng: np.random.Generator) -> DetMatrix:
    p = shift_normalize(p, 0)
    entries = tuple(
        tuple(
            PrimeFieldPoly(modulus, p.entry_degree(i, j), rng.integers(0, modulus, h0_twist(p.entry_degree(i, j))))
            for j in range(p.t)
        )
        for i in range(p.t)
    )
    return DetMatrix(p, entries)


def fermat_matrix(p: AdmissiblePair, modulus: int) -> DetMatrix:
    """Bidiagonal-plus-corner matrix of type p whose determinant is x^d+y^d+z^d+w^d.

    Diagonal entries f_i (degree b_i - a_i) multiply to x^d + y^d, the
    subdiagonal g_i (degree b_i - a_{i+1}) and the corner g_t (degree
    b_t - a_1) multiply to (-1)^(t-1) (z^d + w^d); the t-cycle contributes
    sign (-1)^(t-1), so the two products add.
    """
    p = shift_normalize(p, 0)
    if not is_reduced(p):
        raise ValueError(f"pair is not reduced: {p}")
    d, t = p.d, p.t
    if not is_prime(modulus) or (modulus - 1) % (2 * d):
        raise ValueError(f"modulus must be a prime = 1 mod {2 * d}, got {modulus}")
    omega = pow(primitive_root(modulus), (modulus - 1) // (2 * d), modulus)
    roots = [pow(omega, 2 * k + 1, modulus) for k in range(d)]  # zeta^d = -1

    def factors(u: int, v: int) -> list[PrimeFieldPoly]:
        # u^d + v^d = prod (u - zeta v); u, v index into (x, y, z, w)
        out = []
        for zeta in roots:
            c = [0, 0, 0, 0]
            c[u] = 1
            c[v] = -zeta
            out.append(PrimeFieldPoly.linear(modulus, *c))
        return out

    def grouped(lin: list[PrimeFieldPoly], sizes: list[int]) -> list[PrimeFieldPoly]:
        out, pos = [], 0
        for s in sizes:
            f = lin[pos]
            for g in lin[pos + 1 : pos + s]:
                f = f * g
            out.append(f)
            pos += s
        return out

    f_deg = [p.b[i] - p.a[i] for i in range(t)]
    g_deg = [p.b[i] - p.a[i + 1] for i in range(t - 1)] + [p.b[t - 1] - p.a[0]]
    fs = grouped(factors(0, 1), f_deg)
    gs = grouped(factors(2, 3), g_deg)
    if (t - 1) % 2:
        gs[0] = -gs[0]

    grid = [[PrimeFieldPoly.zero(modulus, p.entry_degree(i, j)) for j in range(t)] for i in range(t)]
    for i in range(t):
        grid[i][i] = fs[i]
    for i in range(t - 1):
        grid[i + 1][i] = gs[i]
    grid[0][t - 1] = gs[t - 1]
    m = DetMatrix(p, tuple(tuple(r) for r in grid))
    return m


def fermat_check(p: AdmissiblePair, modulus: int | None = None) -> bool:
    d = p.d
    modulus = fermat_modulus(d) if modulus is None else modulus
    return det(fermat_matrix(p, modulus)) == fermat_poly(d, modulus)


# --------------------------------------------------------------------------
# Jacobian rank


def jacobian_matrix(m: DetMatrix) -> np.ndarray:
    """Differential of det at m: columns indexed by entry coefficients, rows by degree-d monomials."""
    p = m.pair
    d = p.d
    cof = cofactors(m)
    cols = []
    for i in range(p.t):
        for j in range(p.t):
            e = p.entry_degree(i, j)
            c = cof[i][j]
            table = mul_table(d - e, e)
            block = np.zeros((h0_twist(d), h0_twist(e)), dtype=np.int64)
            # cofactor times the k-th monomial of degree e
            block[table, np.arange(h0_twist(e))[None, :]] = c.coeffs[:, None]
            cols.append(block)
    return np.hstack(cols)


@dataclass(frozen=True)
class RankSample:
    rank: int
    seed_used: int
    rows: int
    cols: int

    @property
    def dim(self) -> int:
        return self.rank - 1


def jacobian_sample(p: AdmissiblePair, modulus: int | None = None, seed: int = 0) -> RankSample:
    p = shift_normalize(p, 0)
    if not is_reduced(p):
        raise ValueError(f"pair is not reduced: {p}")
    modulus = default_modulus() if modulus is None else modulus
    if not (modulus < kernels.MAX_MODULUS and is_prime(modulus)):
        raise ValueError(f"modulus must be a prime below 2**31, got {modulus}")
    if h0_twist(p.d) > MAX_AMBIENT:
        raise ValueError(f"degree {p.d} is beyond the oracle's size bound")
    for attempt in range(MAX_RESEEDS + 1):
        s = seed + attempt
        m = random_matrix(p, modulus, np.random.default_rng(s))
        if det(m).is_zero():
            continue
        J = jacobian_matrix(m)
        return RankSample(kernels.rank_mod_p(J, modulus), s, J.shape[0], J.shape[1])
    raise ArithmeticError(f"determinant vanished for {MAX_RESEEDS + 1} consecutive seeds from {seed}")


def jacobian_rank(p: AdmissiblePair, modulus: int | None = None, seed: int = 0) -> int:
    return jacobian_sample(p, modulus, seed).rank
