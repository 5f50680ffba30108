"""Time the numba kernels against the numpy fallbacks.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each kernel runs
once to trigger compilation before timing.
"""
import argparse
import time

import numpy as np

from toric_exc import kernels
from toric_exc._accel import USE_NUMBA


def _time(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(0)
    W = np.array([[1, 1, 1, 1], [1, -1, 1, -1]], dtype=np.int64)
    h = np.array([28, 3], dtype=np.int64)
    ub = np.full(4, 28, dtype=np.int64)
    yield "count_points (29^4 box)", kernels.count_points_nb, kernels.count_points_np, (W, h, ub, 0)
    G = rng.integers(-2, 3, (9, 6)).astype(np.int64)
    a = rng.integers(-3, 4, 9).astype(np.int64)
    yield "floor_split (m=6, n=6)", kernels.floor_split_nb, kernels.floor_split_np, (G, a, 6)
    member = rng.random((5, 24)) < 0.3
    yield "count_hitting_sets (C(24,6))", kernels.count_hitting_sets_nb, kernels.count_hitting_sets_np, (member, 6)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not USE_NUMBA:
        print("numba disabled: the nb column times the same numpy code")
    print(f"{'kernel':32s} {'numba [s]':>10s} {'numpy [s]':>10s} {'ratio':>7s}")
    for name, nb, npf, fargs in cases():
        t_nb = _time(nb, fargs, args.repeat)
        t_np = _time(npf, fargs, args.repeat)
        print(f"{name:32s} {t_nb:10.4f} {t_np:10.4f} {t_np / max(t_nb, 1e-9):7.1f}")


if __name__ == "__main__":
    main()
