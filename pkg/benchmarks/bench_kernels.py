"""Compare the numba kernels against their pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--sizes 100 200 400 800]

Both paths compute identical results (tests/test_kernels.py asserts that);
this script only reports timing.  The first numba call includes JIT
compilation, so every kernel is warmed before measurement.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pentaseven import _kernels


def random_adj(n: int, p: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((n, n)) < p, 1)
    return adj | adj.T


def time_it(fn, *args, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    args = ap.parse_args()

    if _kernels.BACKEND != "numba":
        print("numba backend unavailable (PENTASEVEN_KERNELS or import failure);")
        print("timing the numpy fallback against itself is pointless, aborting.")
        return

    pairs = [
        ("nonedge_counts", _kernels.nonedge_counts, _kernels.numpy_nonedge_counts),
        (
            "simplicial_elimination",
            _kernels.simplicial_elimination,
            _kernels.numpy_simplicial_elimination,
        ),
    ]

    # warm the jit
    warm = random_adj(30, 0.3, 0)
    _kernels.nonedge_counts(warm)
    _kernels.simplicial_elimination(warm)

    print(f"{'kernel':24s} {'n':>5s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for n in args.sizes:
        adj = random_adj(n, 4.0 / n + 0.05, seed=n)
        for name, jit, ref in pairs:
            t_jit = time_it(jit, adj)
            t_ref = time_it(ref, adj)
            print(
                f"{name:24s} {n:5d} {t_jit * 1e3:9.2f}ms {t_ref * 1e3:9.2f}ms "
                f"{t_ref / max(t_jit, 1e-9):7.1f}x"
            )

    # batched disconnection scan at oracle scale
    n = 18
    g = random_adj(n, 0.35, seed=99)
    rows = [int("".join("1" if g[v, u] else "0" for u in reversed(range(n))), 2)
            for v in range(n)]
    nbr = np.asarray(rows, dtype=np.uint64)
    rng = np.random.default_rng(5)
    removed = rng.integers(0, 1 << n, size=200_000, dtype=np.uint64)
    full = np.uint64((1 << n) - 1)
    _kernels.disconnected_after_removal(nbr, removed[:16], full)  # warm
    t_jit = time_it(_kernels.disconnected_after_removal, nbr, removed, full, repeat=1)
    t_ref = time_it(
        _kernels.numpy_disconnected_after_removal, nbr, removed, full, repeat=1
    )
    print(
        f"{'disconnected_scan(200k)':24s} {n:5d} {t_jit * 1e3:9.2f}ms "
        f"{t_ref * 1e3:9.2f}ms {t_ref / max(t_jit, 1e-9):7.1f}x"
    )


if __name__ == "__main__":
    main()
