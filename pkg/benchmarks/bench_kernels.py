"""Benchmark the numba kernels against the numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--repeat N]

Times the four hot kernels on projective systems of order 63 and 127 and on
a batch of order-20 extension loops (the shapes that dominate the test
suite). Run with STEINER_NUMBA=0 to check that the fallback is the one that
gets picked by the library itself.
"""

from __future__ import annotations

import argparse
import time

import steinerloops as sl
import steinerloops._kernels as kernels
from steinerloops import catalog


def _batch_of_extension_loops(count=64):
    q = catalog.fixture("sts9_labeled").loop()
    n = sl.ElemAbelian2(1)
    out = []
    for i, f in enumerate(sl.enumerate_factor_systems(n, q)):
        if i >= count:
            break
        out.append(sl.build_schreier(n, q, f).table)
    return out


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [kernels.NUMPY_BACKEND]
    if kernels.NUMBA_BACKEND is not None:
        backends.append(kernels.NUMBA_BACKEND)
    else:
        print("numba backend unavailable; timing the numpy fallback only")

    pg5 = catalog.pg(5)
    pg6 = catalog.pg(6)
    batch = _batch_of_extension_loops()
    cases = [
        ("steiner_violation pg(6) table", lambda b: b.steiner_violation(pg6.loop().table)),
        ("center_mask pg(5) table", lambda b: b.center_mask(pg5.loop().table)),
        ("is_associative pg(5) table", lambda b: b.is_associative(pg5.loop().table)),
        ("pasch_census pg(5)", lambda b: b.pasch_census(pg5.third_table, pg5.others)),
        ("pasch_census pg(6)", lambda b: b.pasch_census(pg6.third_table, pg6.others)),
        (
            "center_mask on 64 order-20 loops",
            lambda b: [b.center_mask(t) for t in batch],
        ),
    ]

    # trigger jit compilation outside the timed region
    for b in backends:
        for _, fn in cases:
            fn(b)

    width = max(len(name) for name, _ in cases)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{b.name:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        times = [_time(lambda b=b: fn(b), args.repeat) for b in backends]
        row = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:9.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
