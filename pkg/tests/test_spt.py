import math

import numpy as np
import pytest
from helpers import BIG_SQUARE, PENTAGON, holed_polygon, simple_polygon

from visroute.domain import VertexLabel
from visroute.errors import DisconnectedGraphError, GeneralPositionWarning
from visroute.harness import bellman_ford_distances, gen_holed_domain, gen_star_polygon
from visroute.spt import first_edge, shortest_path_tree, subtree_vertices
from visroute.visibility import VisibilityGraph, build_visibility_graph


def _instances():
    return [
        simple_polygon(PENTAGON),
        gen_star_polygon(18, seed=0),
        gen_star_polygon(30, seed=11),
        gen_holed_domain(12, 2, seed=5),
        gen_holed_domain(16, 3, seed=1),
    ]


def test_distances_match_dense_fixpoint_oracle():
    for d in _instances():
        g = build_visibility_graph(d)
        for s, src in enumerate(d.labels()):
            t = shortest_path_tree(g, src)
            oracle = bellman_ford_distances(g, s)
            scale = 1.0 + np.abs(oracle)
            assert np.all(np.abs(t.dist - oracle) <= 1e-9 * scale), src


def test_source_and_parent_invariants():
    d = gen_star_polygon(22, seed=3)
    g = build_visibility_graph(d)
    labels = list(d.labels())
    src = labels[5]
    t = shortest_path_tree(g, src)
    s = d.global_index(src)
    assert t.dist[s] == 0.0
    assert t.parent[s] == -1
    w = g.weight_matrix
    for v in range(d.n):
        if v == s:
            continue
        p = int(t.parent[v])
        assert p >= 0
        # tree edge exists and is tight
        assert math.isfinite(w[p, v])
        assert t.dist[v] == pytest.approx(t.dist[p] + w[p, v], rel=1e-12)


def test_distance_symmetric():
    d = gen_holed_domain(12, 1, seed=7)
    g = build_visibility_graph(d)
    labels = list(d.labels())
    a, b = labels[0], labels[len(labels) // 2]
    assert shortest_path_tree(g, a).dist_to(b) == pytest.approx(
        shortest_path_tree(g, b).dist_to(a), rel=1e-12)


def test_first_edge_walks_parent_chain():
    d = gen_star_polygon(17, seed=8)
    g = build_visibility_graph(d)
    labels = list(d.labels())
    src = labels[2]
    t = shortest_path_tree(g, src)
    s = d.global_index(src)
    for q in labels:
        if q == src:
            continue
        hop = first_edge(t, q)
        # walk q's ancestry: the vertex right before the source
        v = d.global_index(q)
        while int(t.parent[v]) != s:
            v = int(t.parent[v])
        assert d.label_at(v) == hop
    with pytest.raises(ValueError):
        first_edge(t, src)


def test_subtrees_partition_non_source_vertices():
    d = gen_holed_domain(14, 2, seed=9)
    g = build_visibility_graph(d)
    labels = list(d.labels())
    src = labels[4]
    t = shortest_path_tree(g, src)
    s = d.global_index(src)
    children = [d.label_at(v) for v in range(d.n) if int(t.parent[v]) == s]
    seen: set[VertexLabel] = set()
    for c in children:
        sub = subtree_vertices(t, c)
        assert c in sub
        assert not seen.intersection(sub)
        seen.update(sub)
    assert seen == set(labels) - {src}


def test_disconnected_graph_rejected():
    d = simple_polygon(PENTAGON)
    n = d.n
    empty = VisibilityGraph(
        d,
        np.zeros(n + 1, dtype=np.int64),
        np.zeros(0, dtype=np.int64),
        np.zeros(0, dtype=np.float64),
        0,
    )
    with pytest.raises(DisconnectedGraphError):
        shortest_path_tree(empty, VertexLabel(0, 0))


def test_exact_tie_is_flagged():
    # diamond hole centered in a square: the two ways around it from
    # corner (0,0) to corner (10,10) have exactly equal length
    d = holed_polygon(BIG_SQUARE, [(4, 5), (5, 6), (6, 5), (5, 4)])
    assert d.boundaries[1].area < 0
    g = build_visibility_graph(d)
    with pytest.warns(GeneralPositionWarning, match="near-tied"):
        t = shortest_path_tree(g, VertexLabel(0, 0))
    assert t.near_ties > 0
    # both detours measure sqrt(41) + sqrt(2) + sqrt(41)
    expect = 2.0 * math.sqrt(41.0) + math.sqrt(2.0)
    assert t.dist_to(VertexLabel(0, 2)) == pytest.approx(expect, rel=1e-12)
