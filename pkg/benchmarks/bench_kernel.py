#!/usr/bin/env python3
"""Compare the compiled row-grouping kernel against the pure-Python fallback.

Run from the repository root:

    python benchmarks/bench_kernel.py

The workload mirrors what stabilization actually does: group the rows of a
signature matrix and relabel in first-occurrence order, over a spread of
tuple-space sizes.  Numbers are best-of-5 wall times.
"""

import time

import numpy as np

from pqstab.kernel import backends

SHAPES = [
    (1_000, 4),
    (10_000, 8),
    (100_000, 12),
    (500_000, 16),
]
REPEATS = 5


def _bench(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    impls = backends()
    if set(impls) == {"py"}:
        print("note: compiled kernel unavailable; timing the fallback only")
    rng = np.random.default_rng(7)
    header = f"{'rows x cols':>16} {'distinct':>9}"
    for name in impls:
        header += f" {'group[' + name + ']':>12} {'relabel[' + name + ']':>14}"
    print(header)
    for rows, cols in SHAPES:
        # ~rows/8 distinct row values, like a mid-refinement partition
        base = rng.integers(0, 64, size=(max(2, rows // 8), cols), dtype=np.int64)
        mat = base[rng.integers(0, base.shape[0], size=rows)]
        distinct = np.unique(mat, axis=0).shape[0]
        labels = rng.integers(0, max(2, rows // 8), size=rows, dtype=np.int64)
        line = f"{f'{rows} x {cols}':>16} {distinct:>9}"
        results = {}
        for name, mod in impls.items():
            g = _bench(mod.group_rows, mat)
            r = _bench(mod.relabel_first_occurrence, labels)
            results[name] = (g, r)
            line += f" {g * 1e3:>10.2f}ms {r * 1e3:>12.2f}ms"
        print(line)
        if {"c", "py"} <= set(results):
            gc, rc = results["c"]
            gp, rp = results["py"]
            print(f"{'':>26} speedup: group {gp / gc:>5.1f}x, relabel {rp / rc:>5.1f}x")


if __name__ == "__main__":
    main()
