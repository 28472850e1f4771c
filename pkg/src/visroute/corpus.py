"""Committed example corpus: small domains with pinned expected values.

The JSON files under ``visroute/fixtures/`` are produced by
:func:`regenerate` and committed to the repository.  Tests assert that
regeneration is byte-identical, so the fixtures cannot silently drift
from the generators, and they assert the pinned values in
``expected.json`` against fresh computation, so behaviour cannot
silently drift from the fixtures.

Corpus members:

* ``square`` -- the unit square, the worked example used throughout the
  documentation: 4 vertices, no holes, every vertex sees every other.
* ``pentagon`` -- a convex pentagon in general position; its visibility
  graph is complete (10 edges).
* ``holed_16_3`` -- a 16-gon outer boundary with three 5-gon holes
  (31 vertices, 4 boundaries), from the seeded generator.
* ``spire_8`` -- a comb-shaped corridor with 8 spires whose shortest
  route between the two bottom corners must thread every spire tip.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cones import cone_count
from .domain import (
    OUTER,
    Boundary,
    PolygonalDomain,
    VertexLabel,
    parse_domain,
    serialize_domain,
)
from .geometry import Point
from .harness import gen_holed_domain, gen_spire_polygon
from .router import RoutingScheme, route
from .spt import shortest_path_tree
from .tables import table_bits
from .visibility import build_visibility_graph

__all__ = [
    "CORPUS_NAMES",
    "build_corpus",
    "example_corpus",
    "expected_values",
    "fixture_dir",
    "regenerate",
]

CORPUS_NAMES = ("square", "pentagon", "holed_16_3", "spire_8")

_SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))
_PENTAGON = ((0, 0), (4, 1), (5, 4), (2, 6), (-1, 3))

# (domain, epsilon, source, target) routes pinned in expected.json.
_ROUTES = (
    ("square", 1.0, "0:0", "0:2"),
    ("pentagon", 0.5, "0:0", "0:2"),
    ("holed_16_3", 0.5, "0:0", "2:1"),
    ("spire_8", 1.0, "0:0", "0:1"),
)

_EPS_GRID = (0.1, 0.5, 1.0)


def fixture_dir() -> Path:
    """Directory holding the committed corpus files."""
    return Path(__file__).resolve().parent / "fixtures"


def _simple_polygon(points) -> PolygonalDomain:
    ring = tuple(Point(float(x), float(y)) for x, y in points)
    return PolygonalDomain((Boundary(OUTER, ring),))


def build_corpus() -> dict[str, PolygonalDomain]:
    """Construct every corpus domain from scratch, deterministically."""
    spire, _, _ = gen_spire_polygon(8)
    return {
        "square": _simple_polygon(_SQUARE),
        "pentagon": _simple_polygon(_PENTAGON),
        "holed_16_3": gen_holed_domain(16, 3, seed=1),
        "spire_8": spire,
    }


def _compute_expected(domains: dict[str, PolygonalDomain]) -> dict:
    expected: dict = {
        "format": 1,
        "cone_counts": {repr(e): cone_count(e) for e in _EPS_GRID},
        "domains": {},
        "routes": [],
    }
    schemes: dict[tuple[str, float], RoutingScheme] = {}

    def scheme_for(name: str, epsilon: float) -> RoutingScheme:
        key = (name, epsilon)
        if key not in schemes:
            schemes[key] = RoutingScheme.build(domains[name], epsilon)
        return schemes[key]

    for name in CORPUS_NAMES:
        d = domains[name]
        s = scheme_for(name, 1.0)
        per_vertex = [len(s.tables[v].entries) for v in d.labels()]
        expected["domains"][name] = {
            "n": d.n,
            "h": d.h,
            "boundary_sizes": list(d.boundary_sizes),
            "entries_eps1": sum(per_vertex),
            "max_entries_eps1": max(per_vertex),
            "bits_eps1": sum(
                table_bits(s.tables[v], d.n, d.h) for v in d.labels()
            ),
        }

    for name, epsilon, frm_s, to_s in _ROUTES:
        d = domains[name]
        frm = VertexLabel.parse(frm_s)
        to = VertexLabel.parse(to_s)
        s = scheme_for(name, epsilon)
        trace = route(s, frm, to)
        spt = shortest_path_tree(build_visibility_graph(d), frm)
        trace.set_geodesic(spt.dist_to(to))
        expected["routes"].append(
            {
                "domain": name,
                "epsilon": epsilon,
                "from": frm_s,
                "to": to_s,
                "path": [f"{v.i}:{v.k}" for v in trace.path],
                "hops": trace.hops,
                "routing_distance": trace.routing_distance,
                "geodesic": trace.geodesic,
                "stretch": trace.stretch,
            }
        )
    return expected


def regenerate(target: Path | str | None = None) -> list[Path]:
    """Rebuild every fixture file; returns the paths written.

    Regeneration is deterministic, so rewriting into the committed
    location is byte-identical unless the generators changed.
    """
    out_dir = Path(target) if target is not None else fixture_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    domains = build_corpus()
    written: list[Path] = []
    for name in CORPUS_NAMES:
        path = out_dir / f"{name}.json"
        path.write_text(serialize_domain(domains[name]), encoding="utf-8")
        written.append(path)
    expected_path = out_dir / "expected.json"
    text = json.dumps(_compute_expected(domains), indent=2, sort_keys=True) + "\n"
    expected_path.write_text(text, encoding="utf-8")
    written.append(expected_path)
    return written


def example_corpus() -> dict[str, PolygonalDomain]:
    """Load the committed corpus domains from the fixture files."""
    out: dict[str, PolygonalDomain] = {}
    for name in CORPUS_NAMES:
        text = (fixture_dir() / f"{name}.json").read_text(encoding="utf-8")
        out[name] = parse_domain(text)
    return out


def expected_values() -> dict:
    """Load the pinned expected values for the committed corpus."""
    text = (fixture_dir() / "expected.json").read_text(encoding="utf-8")
    return json.loads(text)


if __name__ == "__main__":
    for p in regenerate():
        print(f"wrote: {p}")
