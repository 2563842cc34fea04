#!/usr/bin/env python3
"""Benchmark the simulator's hot kernels: numba JIT vs the pure fallback.

The fallback is the same function body executed by the interpreter, which
is what you get with SCCLANG_NO_NUMBA=1. Run:

    python tools/bench_kernels.py [--repeats 50]
"""

import argparse
import math
import time

import numpy as np

from scclang.sim.kernels import (USE_NUMBA, bfs_kernel, frontier_kernel,
                                 raycast_kernel, warmup)


def timed(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_world(n=60, seed=3):
    rng = np.random.default_rng(seed)
    occ = (rng.random((n, n)) < 0.12).astype(np.uint8)
    occ[0, :] = occ[-1, :] = occ[:, 0] = occ[:, -1] = 1
    occ[n // 2, n // 2] = 0
    return occ


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    if not USE_NUMBA:
        print("numba is disabled (SCCLANG_NO_NUMBA); nothing to compare")
        return 1
    warmup()

    occ = make_world()
    known = np.zeros_like(occ)
    x = y = (occ.shape[0] // 2 + 0.5) * 0.1
    passable = (occ == 0).astype(np.uint8)

    cases = [
        ("raycast 181 beams",
         lambda: raycast_kernel(occ, known, x, y, 0.7, 181, math.pi, 4.0, 0.1),
         lambda: raycast_kernel.py_func(occ, known, x, y, 0.7, 181, math.pi,
                                        4.0, 0.1)),
        ("frontier scan 60x60",
         lambda: frontier_kernel(occ, known),
         lambda: frontier_kernel.py_func(occ, known)),
        ("bfs 60x60",
         lambda: bfs_kernel(passable, occ.shape[0] // 2, occ.shape[1] // 2),
         lambda: bfs_kernel.py_func(passable, occ.shape[0] // 2,
                                    occ.shape[1] // 2)),
    ]

    print(f"{'kernel':24} {'numba':>12} {'fallback':>12} {'speedup':>9}")
    for name, jit_fn, py_fn in cases:
        jit_t = timed(jit_fn, args.repeats)
        py_t = timed(py_fn, max(3, args.repeats // 10))
        print(f"{name:24} {jit_t * 1e6:>10.1f}us {py_t * 1e6:>10.1f}us "
              f"{py_t / jit_t:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
