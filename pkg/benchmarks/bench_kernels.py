"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeats 3] [--grid-step 0.1]

Each kernel is run once untimed (JIT compilation), then timed over several
repeats; the best wall time is reported along with the numba speed-up.
Results from the two backends are checked for agreement.
"""
import argparse
import math
import time

import numpy as np

from qvalued._kernels import backend_module
from qvalued.counterexample import hexagon_instance
from qvalued.extend import permutation_table


def best_of(fn, repeats):
    out = fn()
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def grid_input(step):
    f = hexagon_instance()
    d = np.linalg.norm(f.points, axis=1)
    ticks = step * np.arange(-int(2.2 / step), int(2.2 / step) + 1)
    grid = np.stack(np.meshgrid(ticks, ticks, indexing="ij"), axis=-1).reshape(-1, 2)
    grid = grid[np.linalg.norm(grid, axis=1) <= 2.2]
    diff = grid[None, None] - f.values[:, :, None, :]
    D = np.ascontiguousarray(np.einsum("kqgn,kqgn->kqg", diff, diff) / (d ** 2)[:, None, None])
    return D, permutation_table(2)


def cases(rng, grid_step):
    D, perms2 = grid_input(grid_step)
    costs = [np.ascontiguousarray(rng.random((6, 6))) for _ in range(2000)]
    values = np.ascontiguousarray(rng.normal(size=(4, 3, 2)))
    w = rng.uniform(0.5, 2.0, 4)
    perms3 = permutation_table(3)
    return {
        f"assignment 6x6 (x{len(costs)})": (
            lambda mod: [mod.assignment(c)[1] for c in costs],
            lambda a, b: np.allclose(a, b, atol=1e-12)),
        "profile_sweep Q=3 k=4 n=2": (
            lambda mod: mod.profile_sweep(values, w, perms3)[0],
            lambda a, b: abs(a - b) < 1e-9),
        f"grid_min_stretch hexagon step {grid_step} ({D.shape[2]} pts)": (
            lambda mod: mod.grid_min_stretch(D, perms2)[0],
            lambda a, b: abs(a - b) < 1e-12),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--grid-step", type=float, default=0.1)
    args = parser.parse_args()

    fast, slow = backend_module("numba"), backend_module("numpy")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<48}{'numba s':>12}{'numpy s':>12}{'speed-up':>10}  agree")
    for name, (run, agree) in cases(rng, args.grid_step).items():
        a, t_fast = best_of(lambda: run(fast), args.repeats)
        b, t_slow = best_of(lambda: run(slow), args.repeats)
        print(f"{name:<48}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>9.1f}x  {agree(a, b)}")


if __name__ == "__main__":
    main()
