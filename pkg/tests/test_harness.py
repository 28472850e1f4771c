import dataclasses
import math

import numpy as np
import pytest
from helpers import PENTAGON, SQUARE, simple_polygon

from visroute.cones import build_fan, cone_count
from visroute.domain import VertexLabel, parse_domain, validate
from visroute.errors import GenerationError, NonIntervalError
from visroute.harness import (
    bellman_ford_distances,
    gen_holed_domain,
    gen_spire_polygon,
    gen_star_polygon,
    naive_cone_members,
    naive_cone_vias,
    naive_interval,
    verify_scheme,
)
from visroute.router import RoutingScheme, route
from visroute.spt import shortest_path_tree
from visroute.tables import CyclicInterval
from visroute.visibility import build_visibility_graph

CHECK_NAMES = (
    "cone-count-bound",
    "dijkstra-vs-bellman-ford",
    "visibility-oracle",
    "interval-oracle",
    "stretched-boundaries",
    "entry-bound",
    "coverage-partition",
    "bit-accounting",
    "routing-stretch",
    "per-step-decrease",
    "termination",
    "spt-noncrossing",
)


# --- generators ---------------------------------------------------------------

def test_star_generator_deterministic_and_valid():
    a = gen_star_polygon(20, seed=4)
    b = gen_star_polygon(20, seed=4)
    assert a == b
    assert a.n == 20 and a.h == 1
    assert validate(a).ok
    assert gen_star_polygon(20, seed=5) != a


def test_star_generator_rejects_tiny():
    with pytest.raises(GenerationError):
        gen_star_polygon(2, seed=0)


def test_holed_generator_counts():
    d = gen_holed_domain(16, 3, seed=1)
    assert d.h == 4
    assert d.boundary_sizes == (16, 5, 5, 5)
    assert validate(d).ok
    assert gen_holed_domain(16, 3, seed=1) == d


def test_holed_generator_rejects_bad_shapes():
    with pytest.raises(GenerationError):
        gen_holed_domain(16, 0, seed=0)
    with pytest.raises(GenerationError):
        gen_holed_domain(7, 1, seed=0)


@pytest.mark.parametrize("m", [2, 5])
def test_spire_generator_properties(m):
    d, p, q = gen_spire_polygon(m)
    assert (p, q) == (VertexLabel(0, 0), VertexLabel(0, 1))
    assert d.n == 3 * m + 4
    assert validate(d).ok
    g = build_visibility_graph(d)
    assert g.has_edge(p, q)  # hop-distance 1: one direct edge suffices
    s = RoutingScheme.build(d, 1.0, graph=g)
    trace = route(s, p, q)
    assert trace.hops == m + 1  # the packet threads every spire tip
    trace.set_geodesic(shortest_path_tree(g, p).dist_to(q))
    assert trace.stretch <= 2.0
    d2, _, _ = gen_spire_polygon(m)
    assert d2 == d


def test_spire_generator_rejects_tiny():
    with pytest.raises(GenerationError):
        gen_spire_polygon(1)


# --- independent oracles --------------------------------------------------------

def test_bellman_ford_complete_graph_is_euclidean():
    d = simple_polygon(PENTAGON)
    g = build_visibility_graph(d)
    dist = bellman_ford_distances(g, 0)
    p0 = d.vertex(VertexLabel(0, 0))
    for k, v in enumerate(d.labels()):
        pv = d.vertex(v)
        assert dist[k] == pytest.approx(math.hypot(pv.x - p0.x, pv.y - p0.y))


def test_naive_interval_cases():
    assert naive_interval(bytearray(5)) is None
    assert naive_interval(bytearray([1] * 5)) == (0, 4)
    assert naive_interval(bytearray([0, 1, 1, 0, 0])) == (1, 2)
    assert naive_interval(bytearray([1, 0, 0, 0, 1])) == (4, 0)  # wraps
    with pytest.raises(NonIntervalError):
        naive_interval(bytearray([1, 0, 1, 0, 0]))


def test_naive_oracles_match_built_table_on_square():
    d = simple_polygon(SQUARE)
    g = build_visibility_graph(d)
    p = VertexLabel(0, 0)
    spt = shortest_path_tree(g, p)
    fan = build_fan(d, p, cone_count(1.0))
    member = naive_cone_members(d, spt, fan)
    assert sorted(member) == [(1, 0), (7, 0), (13, 0)]
    assert naive_interval(member[(7, 0)]) == (2, 2)
    vias = naive_cone_vias(d, g, fan)
    assert vias == {1: VertexLabel(0, 3), 7: VertexLabel(0, 2),
                    13: VertexLabel(0, 1)}


# --- verification: passing instances -------------------------------------------

def test_verify_square_passes():
    rep = verify_scheme(simple_polygon(SQUARE), 1.0)
    assert rep.ok
    assert tuple(c.name for c in rep.checks) == CHECK_NAMES
    assert all(c.passed for c in rep.checks)
    assert rep.max_stretch == 1.0
    assert rep.total_bits == 72
    assert rep.max_entries == 3
    assert rep.instance_json is None
    text = rep.to_text()
    assert text.count("PASS") == 13  # 12 checks + the result line
    assert "result: PASS" in text


def test_verify_holed_domain_passes():
    rep = verify_scheme(gen_holed_domain(16, 3, seed=1), 0.5)
    assert rep.ok
    assert rep.max_stretch <= 1.5 * (1 + 1e-9)


def test_verify_without_noncrossing_check():
    rep = verify_scheme(simple_polygon(SQUARE), 1.0, check_noncrossing=False)
    assert tuple(c.name for c in rep.checks) == CHECK_NAMES[:-1]


def test_verify_sampled_pairs():
    d = gen_holed_domain(16, 3, seed=1)
    rep = verify_scheme(d, 1.0, pairs=50, seed=9)
    assert rep.ok
    routing = next(c for c in rep.checks if c.name == "routing-stretch")
    assert routing.detail.startswith("50 pairs")


def test_verify_accepts_precomputed_artifacts():
    d = gen_holed_domain(12, 2, seed=3)
    g = build_visibility_graph(d)
    labels = list(d.labels())
    spts = [shortest_path_tree(g, v) for v in labels]
    bf = [bellman_ford_distances(g, s) for s in range(d.n)]
    fresh = verify_scheme(d, 0.5)
    shared = verify_scheme(d, 0.5, graph=g, spts=spts, bf_dist=bf)
    assert fresh.checks == shared.checks
    assert fresh.max_stretch == shared.max_stretch
    assert fresh.total_bits == shared.total_bits


# --- verification: fault injection ----------------------------------------------

def _square_tables():
    d = simple_polygon(SQUARE)
    s = RoutingScheme.build(d, 1.0)
    return d, dict(s.tables)


def _failing_names(rep):
    return {c.name for c in rep.checks if not c.passed}


def test_fault_swapped_interval_endpoints():
    d, tables = _square_tables()
    owner = VertexLabel(0, 0)
    tbl = tables[owner]
    e = tbl.entries[0]
    bad = dataclasses.replace(
        e, interval=CyclicInterval(e.k2, (e.k1 + 1) % 4))
    tables[owner] = dataclasses.replace(
        tbl, entries=(bad,) + tbl.entries[1:], _lookup_cache={})
    rep = verify_scheme(d, 1.0, tables=tables)
    assert not rep.ok
    assert _failing_names(rep) == {"interval-oracle", "coverage-partition"}
    assert rep.instance_json is not None
    text = rep.to_text()
    assert "result: FAIL (2 of 12 checks)" in text
    assert "instance:" in text
    # the embedded instance replays to the same domain
    embedded = "\n".join(
        ln[2:] for ln in text.splitlines()
        if ln.startswith("  ") and not ln.startswith("  |"))
    assert parse_domain(embedded) == d


def test_fault_wrong_via():
    d, tables = _square_tables()
    owner = VertexLabel(0, 0)
    tbl = tables[owner]
    entries = list(tbl.entries)
    idx = next(i for i, e in enumerate(entries)
               if e.covers(VertexLabel(0, 2)))
    entries[idx] = dataclasses.replace(entries[idx], via=VertexLabel(0, 1))
    tables[owner] = dataclasses.replace(
        tbl, entries=tuple(entries), _lookup_cache={})
    rep = verify_scheme(d, 1.0, tables=tables)
    assert not rep.ok
    # the via no longer matches the nearest in-cone vertex, and the
    # detour through it no longer shrinks the remaining distance enough
    assert _failing_names(rep) == {"interval-oracle", "per-step-decrease"}
    offending = next(c for c in rep.checks if c.name == "per-step-decrease")
    assert offending.counterexamples


def test_fault_missing_table():
    d, tables = _square_tables()
    del tables[VertexLabel(0, 3)]
    rep = verify_scheme(d, 1.0, tables=tables)
    assert not rep.ok
    failing = _failing_names(rep)
    assert "interval-oracle" in failing
    assert "routing-stretch" in failing  # pairs from 0:3 cannot route


def test_verify_deterministic():
    d = gen_holed_domain(12, 1, seed=6)
    a = verify_scheme(d, 1.0, pairs=40, seed=2)
    b = verify_scheme(d, 1.0, pairs=40, seed=2)
    assert a.checks == b.checks
    assert a.max_stretch == b.max_stretch
