"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The public names (``batch_dim_det``, ``rank_mod_p``, ``poly_mul_coeffs``)
are bound to the numba versions unless ``DETSURF_DISABLE_NUMBA`` is set; the
``*_numpy`` and ``*_numba`` variants stay importable so the benchmark and the
tests can compare them directly.

All kernels work in int64. Callers guarantee the inputs fit:

* ``batch_dim_det`` is only used for d <= 60 (see ``INT64_DEGREE_LIMIT``);
  the exact Python-int path in :mod:`detsurf.cohomology` covers everything.
* modular kernels take a modulus below 2**31 so a product of two reduced
  residues stays below 2**62.
"""
from __future__ import annotations

from math import comb

import numpy as np

from detsurf._accel import USE_NUMBA, njit

INT64_DEGREE_LIMIT = 60
MAX_MODULUS = 2**31


# --------------------------------------------------------------------------
# dimension of det(a,b) for a batch of resolutions of equal length


def _h0_numpy(m: np.ndarray) -> np.ndarray:
    return np.where(m >= 0, (m + 1) * (m + 2) * (m + 3) // 6, 0)


def _hom_numpy(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return _h0_numpy(X[:, :, None] - Y[:, None, :]).sum(axis=(1, 2))


def batch_dim_det_numpy(A: np.ndarray, B: np.ndarray, d: int) -> np.ndarray:
    """Row-wise dimension formula; row i of A holds (d, a_1..a_t), B holds b."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    dC = ((B**2).sum(axis=1) - (A**2).sum(axis=1)) // 2
    gC = 1 + ((B**3).sum(axis=1) - (A**3).sum(axis=1)) // 6 - 2 * dC
    return (
        2
        + _hom_numpy(B, A)
        - _hom_numpy(A, A)
        - _hom_numpy(B, B)
        - comb(d - 1, 3)
        - gC
        + (d - 4) * dC
    )


@njit(cache=True)
def _h0_scalar(m):
    if m < 0:
        return 0
    return (m + 1) * (m + 2) * (m + 3) // 6


@njit(cache=True)
def _batch_dim_det_jit(A, B, d, top):
    n = A.shape[0]
    na = A.shape[1]
    nb = B.shape[1]
    out = np.empty(n, dtype=np.int64)
    for r in range(n):
        s2 = 0
        s3 = 0
        for j in range(nb):
            x = B[r, j]
            s2 += x * x
            s3 += x * x * x
        for i in range(na):
            x = A[r, i]
            s2 -= x * x
            s3 -= x * x * x
        dC = s2 // 2
        gC = 1 + s3 // 6 - 2 * dC
        hom_ba = 0
        hom_bb = 0
        for j in range(nb):
            for i in range(na):
                hom_ba += _h0_scalar(B[r, j] - A[r, i])
            for k in range(nb):
                hom_bb += _h0_scalar(B[r, j] - B[r, k])
        hom_aa = 0
        for i in range(na):
            for k in range(na):
                hom_aa += _h0_scalar(A[r, i] - A[r, k])
        out[r] = 2 + hom_ba - hom_aa - hom_bb - top - gC + (d - 4) * dC
    return out


def batch_dim_det_numba(A: np.ndarray, B: np.ndarray, d: int) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    return _batch_dim_det_jit(A, B, d, comb(d - 1, 3))


# --------------------------------------------------------------------------
# rank over F_p


def rank_mod_p_numpy(M: np.ndarray, p: int) -> int:
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        below = R[r + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            R[r + 1 :][mask] = (R[r + 1 :][mask] - np.outer(below[mask], R[r]) % p) % p
        r += 1
    return r


@njit(cache=True)
def _powmod(base, exp, mod):
    result = 1
    base %= mod
    while exp > 0:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


@njit(cache=True)
def _rank_mod_p_jit(R, p):
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(cols):
                tmp = R[r, k]
                R[r, k] = R[piv, k]
                R[piv, k] = tmp
        inv = _powmod(R[r, c], p - 2, p)
        for k in range(c, cols):
            R[r, k] = R[r, k] * inv % p
        for i in range(r + 1, rows):
            f = R[i, c]
            if f != 0:
                for k in range(c, cols):
                    R[i, k] = (R[i, k] - f * R[r, k]) % p
        r += 1
    return r


def rank_mod_p_numba(M: np.ndarray, p: int) -> int:
    R = np.array(M, dtype=np.int64) % p
    return int(_rank_mod_p_jit(R, p))


# --------------------------------------------------------------------------
# product of dense homogeneous polynomials


def poly_mul_coeffs_numpy(f: np.ndarray, g: np.ndarray, table: np.ndarray, n_out: int, p: int) -> np.ndarray:
    """``table[i, j]`` is the output index of monomial_i * monomial_j."""
    out = np.zeros(n_out, dtype=np.int64)
    np.add.at(out, table, np.outer(f, g) % p)
    return out % p


@njit(cache=True)
def _poly_mul_jit(f, g, table, n_out, p):
    out = np.zeros(n_out, dtype=np.int64)
    for i in range(f.shape[0]):
        fi = f[i]
        if fi == 0:
            continue
        for j in range(g.shape[0]):
            gj = g[j]
            if gj != 0:
                k = table[i, j]
                out[k] = (out[k] + fi * gj) % p
    return out


def poly_mul_coeffs_numba(f: np.ndarray, g: np.ndarray, table: np.ndarray, n_out: int, p: int) -> np.ndarray:
    return _poly_mul_jit(
        np.ascontiguousarray(f, dtype=np.int64),
        np.ascontiguousarray(g, dtype=np.int64),
        np.ascontiguousarray(table, dtype=np.int64),
        n_out,
        p,
    )


if USE_NUMBA:
    batch_dim_det = batch_dim_det_numba
    rank_mod_p = rank_mod_p_numba
    poly_mul_coeffs = poly_mul_coeffs_numba
else:
    batch_dim_det = batch_dim_det_numpy
    rank_mod_p = rank_mod_p_numpy
    poly_mul_coeffs = poly_mul_coeffs_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
