import os
import subprocess
import sys

import numpy as np
import pytest
from helpers import (
    BIG_SQUARE,
    PENTAGON,
    QUAD_HOLE,
    SQUARE,
    holed_polygon,
    simple_polygon,
)

from visroute.harness import gen_holed_domain, gen_star_polygon
from visroute.kernels import BACKEND, _fast, _ref
from visroute.visibility import build_visibility_graph

DIAMOND = ((4, 5), (5, 6), (6, 5), (5, 4))  # forces equal-length detours
GRAZING = ((0, 0), (2, 0), (2, 2), (1, 1), (0, 2))  # (1,1) on the diagonal


def instances():
    return [
        simple_polygon(SQUARE),
        simple_polygon(PENTAGON),
        simple_polygon(GRAZING),
        holed_polygon(BIG_SQUARE, QUAD_HOLE),
        holed_polygon(BIG_SQUARE, DIAMOND),
        gen_star_polygon(24, seed=3),
        gen_holed_domain(16, 2, seed=5),
    ]


def test_backend_dispatch():
    want = "pure" if os.environ.get("VISROUTE_PURE") == "1" else "compiled"
    assert BACKEND == want


def test_pure_env_forces_fallback():
    env = {**os.environ, "VISROUTE_PURE": "1"}
    out = subprocess.run(
        [sys.executable, "-c", "from visroute.kernels import BACKEND; "
                               "print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "pure"
    env.pop("VISROUTE_PURE")
    out = subprocess.run(
        [sys.executable, "-c", "from visroute.kernels import BACKEND; "
                               "print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "compiled"


def _run_collinear(impl, xs, ys, max_report):
    out = np.zeros((max_report, 3), dtype=np.int64)
    count = impl.collinear_triples(xs, ys, max_report, out)
    return count, out


def test_collinear_triples_known_case():
    # four points on the main diagonal plus one off it
    xs = np.array([0.0, 1.0, 2.0, 3.0, 0.0])
    ys = np.array([0.0, 1.0, 2.0, 3.0, 1.0])
    for impl in (_ref, _fast):
        count, out = _run_collinear(impl, xs, ys, 8)
        assert count == 4
        assert out[:4].tolist() == [[0, 1, 2], [0, 1, 3], [0, 2, 3],
                                    [1, 2, 3]]


def test_collinear_triples_truncates_report():
    xs = np.arange(6, dtype=np.float64)
    ys = np.arange(6, dtype=np.float64)
    for impl in (_ref, _fast):
        count, out = _run_collinear(impl, xs, ys, 2)
        assert count == 20  # C(6,3): all triples collinear
        assert out.tolist() == [[0, 1, 2], [0, 1, 3]]


def test_collinear_triples_backends_agree():
    rng = np.random.default_rng(11)
    for trial in range(5):
        xs = rng.integers(0, 8, size=14).astype(np.float64)
        ys = rng.integers(0, 8, size=14).astype(np.float64)
        ref = _run_collinear(_ref, xs, ys, 64)
        fast = _run_collinear(_fast, xs, ys, 64)
        assert ref[0] == fast[0]
        assert np.array_equal(ref[1], fast[1])


def test_visibility_matrix_backends_agree():
    for d in instances():
        xs, ys, offs, outer = d.coord_arrays
        ref = np.zeros((d.n, d.n), dtype=np.uint8)
        fast = np.zeros((d.n, d.n), dtype=np.uint8)
        g_ref = _ref.visibility_matrix(xs, ys, offs, outer, ref)
        g_fast = _fast.visibility_matrix(xs, ys, offs, outer, fast)
        assert g_ref == g_fast
        assert np.array_equal(ref, fast)
        assert np.array_equal(ref, ref.T)
        assert not ref.diagonal().any()


def test_visibility_matrix_reports_grazing():
    d = simple_polygon(GRAZING)
    xs, ys, offs, outer = d.coord_arrays
    out = np.zeros((d.n, d.n), dtype=np.uint8)
    assert _ref.visibility_matrix(xs, ys, offs, outer, out) >= 1


def test_dijkstra_backends_bit_identical():
    for d in instances():
        if d.n == 5 and d.boundary_sizes == (5,):
            continue  # the grazing polygon warns during graph construction
        g = build_visibility_graph(d)
        for source in range(d.n):
            dist_r = np.empty(d.n)
            par_r = np.empty(d.n, dtype=np.int64)
            dist_f = np.empty(d.n)
            par_f = np.empty(d.n, dtype=np.int64)
            ties_r = _ref.dijkstra(g.indptr, g.indices, g.weights, source,
                                   dist_r, par_r)
            ties_f = _fast.dijkstra(g.indptr, g.indices, g.weights, source,
                                    dist_f, par_f)
            assert ties_r == ties_f
            assert dist_r.tobytes() == dist_f.tobytes()
            assert np.array_equal(par_r, par_f)
            assert par_r[source] == -1
            assert dist_r[source] == 0.0


def test_dijkstra_counts_near_ties():
    d = holed_polygon(BIG_SQUARE, DIAMOND)
    g = build_visibility_graph(d)
    dist = np.empty(d.n)
    parent = np.empty(d.n, dtype=np.int64)
    ties = _ref.dijkstra(g.indptr, g.indices, g.weights, 0, dist, parent)
    assert ties > 0
    assert ties == _fast.dijkstra(g.indptr, g.indices, g.weights, 0,
                                  dist, parent)


def test_dijkstra_unreachable_vertices():
    # two isolated vertices: CSR with no edges at all
    indptr = np.zeros(3, dtype=np.int64)
    indices = np.zeros(0, dtype=np.int64)
    weights = np.zeros(0)
    for impl in (_ref, _fast):
        dist = np.empty(2)
        parent = np.empty(2, dtype=np.int64)
        ties = impl.dijkstra(indptr, indices, weights, 0, dist, parent)
        assert ties == 0
        assert dist[0] == 0.0 and np.isinf(dist[1])
        assert parent.tolist() == [-1, -1]
