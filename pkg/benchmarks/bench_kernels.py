"""Timing comparison of the compiled and pure-Python evaluation kernels.

Runs both backends on the same words and batches and prints the median
wall time per call plus the speedup.  Usage:

    python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import statistics
import time

import numpy as np

from holoprint import _kernels_py
from holoprint.wordgen import make_rng, random_word

try:
    from holoprint import _kernels
except ImportError:
    _kernels = None


def time_call(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_case(name, plan, Z, repeats):
    rows = []
    for label, fn in (
        ("eval_points", lambda mod: mod.eval_points(plan, Z)),
        ("eval_jacobians", lambda mod: mod.eval_jacobians(plan, Z)),
    ):
        t_py = time_call(lambda: fn(_kernels_py), repeats)
        if _kernels is not None:
            t_c = time_call(lambda: fn(_kernels), repeats)
            speedup = f"{t_py / t_c:6.1f}x"
        else:
            t_c, speedup = float("nan"), "   n/a"
        rows.append((f"{name} {label}", t_py, t_c, speedup))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=9)
    args = ap.parse_args()

    rng = make_rng(100)
    cases = []
    for n, length, batch in ((2, 4, 100), (2, 4, 10000), (3, 6, 10000)):
        w = random_word(rng, n, max_length=length, image_bound=1e3)
        Z = 0.5 * (rng.standard_normal((batch, n)) + 1j * rng.standard_normal((batch, n)))
        cases.append((f"n={n} len={len(w.word)} batch={batch}", w._plan, Z))

    if _kernels is None:
        print("compiled extension not available; timing pure backend only\n")

    header = f"{'case':40s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, plan, Z in cases:
        for label, t_py, t_c, speedup in bench_case(name, plan, Z, args.repeats):
            c = f"{t_c * 1e3:8.3f}ms" if t_c == t_c else "       --"
            print(f"{label:40s} {t_py * 1e3:8.3f}ms {c} {speedup:>8s}")


if __name__ == "__main__":
    main()
