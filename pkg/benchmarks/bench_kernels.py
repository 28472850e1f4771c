#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Both backends implement identical floating-point operation sequences, so
this script measures speed only; the test suite asserts bit-identical
outputs.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 20 40 60 80 --repeats 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from visroute.harness import gen_star_polygon
from visroute.kernels import BACKEND, _fast, _ref
from visroute.visibility import build_visibility_graph


def best_of(repeats: int, fn) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_instance(n: int, repeats: int) -> list[tuple[str, int, float, float]]:
    d = gen_star_polygon(n, seed=7)
    xs, ys, offs, outer = d.coord_arrays
    g = build_visibility_graph(d)
    rows = []

    out_triples = np.zeros((64, 3), dtype=np.int64)
    rows.append((
        "collinear_triples", n,
        best_of(repeats, lambda: _ref.collinear_triples(xs, ys, 64,
                                                        out_triples)),
        best_of(repeats, lambda: _fast.collinear_triples(xs, ys, 64,
                                                         out_triples)),
    ))

    def vis(impl):
        mat = np.zeros((n, n), dtype=np.uint8)
        impl.visibility_matrix(xs, ys, offs, outer, mat)

    rows.append((
        "visibility_matrix", n,
        best_of(repeats, lambda: vis(_ref)),
        best_of(repeats, lambda: vis(_fast)),
    ))

    def all_sources(impl):
        dist = np.empty(n)
        parent = np.empty(n, dtype=np.int64)
        for source in range(n):
            impl.dijkstra(g.indptr, g.indices, g.weights, source,
                          dist, parent)

    rows.append((
        "dijkstra (all sources)", n,
        best_of(repeats, lambda: all_sources(_ref)),
        best_of(repeats, lambda: all_sources(_fast)),
    ))
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[20, 40, 60],
                        help="star-polygon vertex counts to benchmark")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats; the best run is reported")
    args = parser.parse_args(argv)

    print(f"import-time backend selection: {BACKEND}")
    header = f"{'kernel':<24}{'n':>5}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        for name, size, pure, fast in bench_instance(n, args.repeats):
            print(f"{name:<24}{size:>5}{pure * 1e3:>12.3f}"
                  f"{fast * 1e3:>15.3f}{pure / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
