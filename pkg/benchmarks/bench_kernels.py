#!/usr/bin/env python3
"""Timing comparison of the numba kernels against their numpy fallbacks.

Run with:  python3 benchmarks/bench_kernels.py [--points N] [--repeat K]

The same comparison can be forced package-wide by setting
CURVEKIT_DISABLE_NUMBA=1 in the environment.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from curvekit import _kernels  # noqa: E402
from curvekit.expr import compile_program, parse  # noqa: E402
from curvekit.polar import PolarCurve  # noqa: E402


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_program(points, repeat):
    program = compile_program(
        parse("(1 + lambda*cos(t))*cos(3*t/2) - sin(t)^2/(2 + cos(t))"),
        {"lambda": 2.0},
    )
    xs = np.linspace(0.0, 40.0, points)
    rows = []
    numpy_fn = lambda: program(xs, force_numpy=True)
    rows.append(("program eval (numpy)", timeit(numpy_fn, repeat)))
    if _kernels.NUMBA_ENABLED:
        program(xs)  # compile once before timing
        rows.append(("program eval (numba)", timeit(lambda: program(xs), repeat)))
    return rows


def bench_pairs(repeat):
    c1 = PolarCurve("sin(5*theta)")
    c2 = PolarCurve("cos(5*theta)")
    thetas = np.linspace(0.0, np.pi, 20000, endpoint=False)
    za = c1.points_many(thetas)
    zb = c2.points_many(thetas)
    rows = []
    rows.append(
        (
            "close pairs + cluster (numpy)",
            timeit(
                lambda: _kernels.cluster_points(
                    _kernels.close_pair_points(za, zb, 1e-3, force_numpy=True),
                    5e-3,
                    force_numpy=True,
                ),
                repeat,
            ),
        )
    )
    if _kernels.NUMBA_ENABLED:
        _kernels.cluster_points(_kernels.close_pair_points(za, zb, 1e-3), 5e-3)
        rows.append(
            (
                "close pairs + cluster (numba)",
                timeit(
                    lambda: _kernels.cluster_points(
                        _kernels.close_pair_points(za, zb, 1e-3), 5e-3
                    ),
                    repeat,
                ),
            )
        )
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"numba enabled: {_kernels.NUMBA_ENABLED}")
    rows = bench_program(args.points, args.repeat) + bench_pairs(args.repeat)
    width = max(len(name) for name, _ in rows)
    baseline = {}
    for name, seconds in rows:
        kind = name.split(" (")[0]
        baseline.setdefault(kind, seconds)
        speedup = baseline[kind] / seconds
        print(f"{name:<{width}}  {seconds * 1e3:10.2f} ms   x{speedup:,.1f}")
    if not _kernels.NUMBA_ENABLED:
        print("numba rows skipped (disabled or unavailable)")


if __name__ == "__main__":
    main()
