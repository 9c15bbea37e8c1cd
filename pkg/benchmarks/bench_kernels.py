#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against their plain-Python/NumPy twins.

Runs in-process: the package keeps both variants importable, so no
re-import tricks are needed.  With DIRACPAULI_NO_NUMBA=1 the selected and
fallback paths are the same object and the script says so.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from diracpauli import _kernels

SHOOT_ARGS = (-0.0038298416916852443, 0.001, 1.002001, 1.4149208458426217,
              1.0, 40000.0, 1e-12, 10600.0)


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_laguerre(repeats):
    z = np.linspace(1e-3, 80.0, 200_000)
    n, alpha = 8, 2.83
    _kernels.laguerre_grid(n, alpha, z)  # warm-up / compile
    t_sel, ref = timeit(_kernels.laguerre_grid, n, alpha, z, repeats=repeats)
    t_py, alt = timeit(_kernels.laguerre_grid_py, n, alpha, z, repeats=repeats)
    assert np.array_equal(ref, alt), "kernel variants disagree"
    return "laguerre_grid (n=8, 200k points)", t_sel, t_py


def bench_shoot(repeats):
    _kernels.shoot_integrate(*SHOOT_ARGS)  # warm-up / compile
    t_sel, ref = timeit(_kernels.shoot_integrate, *SHOOT_ARGS, repeats=repeats)
    t_py, alt = timeit(_kernels.shoot_integrate_py, *SHOOT_ARGS,
                       repeats=max(1, repeats // 2))
    assert ref[0] == alt[0] and ref[1] == alt[1], "kernel variants disagree"
    return f"shoot_integrate ({ref[2]} adaptive steps)", t_sel, t_py


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"numba active: {_kernels.USE_NUMBA}")
    if not _kernels.USE_NUMBA:
        print("note: selected and fallback kernels are identical in this mode;")
        print("unset DIRACPAULI_NO_NUMBA (and install numba) to compare paths.")
    print(f"{'kernel':<42} {'selected':>12} {'fallback':>12} {'speedup':>9}")
    for bench in (bench_laguerre, bench_shoot):
        name, t_sel, t_py = bench(args.repeats)
        print(f"{name:<42} {t_sel * 1e3:>10.2f}ms {t_py * 1e3:>10.2f}ms "
              f"{t_py / t_sel:>8.1f}x")


if __name__ == "__main__":
    main()
