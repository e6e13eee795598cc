"""Compare the numba and pure-numpy kernels on realistic inputs.

    python benchmarks/bench_kernels.py [--d-max 28] [--repeat 3]

Each kernel is called once to warm up (JIT compilation) before timing; the
reported number is the best of --repeat runs.  Outputs of the two backends
are compared for equality on every input.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from detsurf import kernels
from detsurf.ff_oracle import jacobian_matrix, mul_table, random_matrix
from detsurf.pairs import enumerate_classes, shift_normalize

P31 = 2147483647


def sweep_arrays(d_lo: int, d_hi: int) -> list[tuple[np.ndarray, np.ndarray, int]]:
    """(A, B, d) arrays for every (d, t) group of the class sweep."""
    out = []
    for d in range(d_lo, d_hi + 1):
        groups: dict[int, list] = {}
        for c in enumerate_classes(d):
            groups.setdefault(c.t, []).append(c.representative)
        for t, reps in groups.items():
            A = np.empty((len(reps), t + 1), dtype=np.int64)
            B = np.empty((len(reps), t), dtype=np.int64)
            for row, p in enumerate(reps):
                q = shift_normalize(p, d + 1)
                A[row, 0] = d
                A[row, 1:] = q.a
                B[row] = q.b
            out.append((A, B, d))
    return out


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(name: str, numpy_fn, numba_fn, repeat: int) -> None:
    a, b = numpy_fn(), numba_fn()
    same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, list) else a == b
    if not same:
        raise SystemExit(f"{name}: backends disagree")
    t_np = best_of(numpy_fn, repeat)
    t_nb = best_of(numba_fn, repeat)
    print(f"{name:<28} numpy {t_np * 1e3:9.2f} ms   numba {t_nb * 1e3:9.2f} ms   x{t_np / t_nb:6.1f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-min", type=int, default=20)
    ap.add_argument("--d-max", type=int, default=28)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")

    groups = sweep_arrays(args.d_min, args.d_max)
    n = sum(len(A) for A, _, _ in groups)
    bench(
        f"batch_dim_det ({n} classes)",
        lambda: [kernels.batch_dim_det_numpy(A, B, d) for A, B, d in groups],
        lambda: [kernels.batch_dim_det_numba(A, B, d) for A, B, d in groups],
        args.repeat,
    )

    rng = np.random.default_rng(0)
    for p in (enumerate_classes(5)[0].representative, enumerate_classes(6)[3].representative):
        J = jacobian_matrix(random_matrix(p, P31, rng))
        bench(
            f"rank_mod_p {J.shape[0]}x{J.shape[1]}",
            lambda: kernels.rank_mod_p_numpy(J, P31),
            lambda: kernels.rank_mod_p_numba(J, P31),
            args.repeat,
        )

    for da, db in ((4, 5), (8, 8)):
        f = rng.integers(0, P31, len(mul_table(da, 0)))
        g = rng.integers(0, P31, len(mul_table(db, 0)))
        table = mul_table(da, db)
        n_out = int(table.max()) + 1
        bench(
            f"poly_mul deg {da} x {db}",
            lambda: [kernels.poly_mul_coeffs_numpy(f, g, table, n_out, P31)],
            lambda: [kernels.poly_mul_coeffs_numba(f, g, table, n_out, P31)],
            args.repeat,
        )


if __name__ == "__main__":
    main()
