"""The local forwarding function and the end-to-end routing simulation.

Forwarding is deliberately blinkered: `route_step` sees only the
current vertex's routing table and the target's label.  Coordinates
enter only afterwards, when the simulation accounts hop lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cones import cone_count
from .domain import PolygonalDomain, VertexLabel
from .errors import (
    DomainError,
    NonTerminationError,
    TableCorruptionError,
    UnknownDestinationError,
)
from .geometry import Point, distance
from .tables import RoutingTable, TableSet, build_all_tables
from .visibility import VisibilityGraph, build_visibility_graph


@dataclass(frozen=True)
class RoutingScheme:
    """Everything a deployed scheme carries: per-vertex tables plus the
    header (n, h, epsilon, t).  Coordinates are kept only so the
    simulation can account hop lengths; forwarding never reads them."""

    n: int
    h: int
    epsilon: float
    t: int
    boundary_sizes: tuple[int, ...]
    tables: Mapping[VertexLabel, RoutingTable]
    coords: Mapping[VertexLabel, Point]

    @classmethod
    def build(cls, d: PolygonalDomain, epsilon: float, *,
              graph: VisibilityGraph | None = None,
              spts=None) -> "RoutingScheme":
        t = cone_count(epsilon)
        if graph is None:
            graph = build_visibility_graph(d)
        tables = build_all_tables(d, graph, t, spts=spts)
        coords = {v: d.vertex(v) for v in d.labels()}
        return cls(d.n, d.h, epsilon, t, d.boundary_sizes, tables, coords)

    @classmethod
    def from_table_set(cls, ts: TableSet) -> "RoutingScheme":
        if ts.domain is None:
            raise ValueError(
                "routing needs coordinates for hop accounting; the tables "
                "file has no embedded domain")
        d = ts.domain
        if set(ts.tables) != set(d.labels()):
            raise TableCorruptionError(
                "tables file does not have exactly one table per vertex")
        coords = {v: d.vertex(v) for v in d.labels()}
        return cls(ts.n, ts.h, ts.epsilon, ts.t, d.boundary_sizes,
                   ts.tables, coords)

    def check_label(self, v: VertexLabel) -> None:
        if not (0 <= v.i < self.h):
            raise DomainError(f"label {v}: boundary index out of range "
                              f"(h={self.h})")
        if not (0 <= v.k < self.boundary_sizes[v.i]):
            raise DomainError(
                f"label {v}: vertex index out of range (boundary {v.i} has "
                f"{self.boundary_sizes[v.i]} vertices)")


@dataclass
class RoutingTrace:
    """A routed packet's itinerary.  `geodesic` and `stretch` stay None
    until a caller with access to shortest-path distances fills them."""

    path: list[VertexLabel]
    hop_lengths: list[float]
    routing_distance: float
    geodesic: float | None = field(default=None)
    stretch: float | None = field(default=None)

    @property
    def hops(self) -> int:
        return len(self.hop_lengths)

    def set_geodesic(self, geodesic: float) -> None:
        self.geodesic = geodesic
        if self.routing_distance == 0.0 and geodesic == 0.0:
            self.stretch = 1.0
        else:
            self.stretch = self.routing_distance / geodesic


def route_step(tbl: RoutingTable, target: VertexLabel) -> VertexLabel:
    """The forwarding decision: the via vertex of the unique table entry
    whose boundary and cyclic interval cover the target's label."""
    if target == tbl.owner:
        raise ValueError(f"target {target} equals the table owner")
    hit = tbl._lookup_cache.get(target)
    if hit is not None:
        return hit
    matches = [e for e in tbl.entries_for_hole(target.i)
               if e.interval.contains(target.k)]
    if not matches:
        raise UnknownDestinationError(
            f"no entry at {tbl.owner} covers {target}: corrupt tables or "
            "invalid label")
    if len(matches) > 1:
        raise TableCorruptionError(
            f"{len(matches)} entries at {tbl.owner} cover {target}; "
            "intervals must be disjoint per boundary")
    via = matches[0].via
    tbl._lookup_cache[target] = via
    return via


def route(s: RoutingScheme, frm: VertexLabel, to: VertexLabel) -> RoutingTrace:
    """Simulate a packet from `frm` to `to`, applying route_step at each
    vertex.  A packet still in flight after n+1 steps means the
    distance-decrease guarantee was violated, which is reported rather
    than looped on."""
    s.check_label(frm)
    s.check_label(to)
    path = [frm]
    hop_lengths: list[float] = []
    total = 0.0
    cur = frm
    budget = s.n + 1
    while cur != to:
        if len(hop_lengths) >= budget:
            raise NonTerminationError(
                f"packet from {frm} to {to} still in flight after {budget} "
                "steps; tables are corrupt or geometry is degenerate")
        tbl = s.tables.get(cur)
        if tbl is None:
            raise TableCorruptionError(f"no table at {cur}")
        nxt = route_step(tbl, to)
        hop = distance(s.coords[cur], s.coords[nxt])
        path.append(nxt)
        hop_lengths.append(hop)
        total += hop
        cur = nxt
    return RoutingTrace(path, hop_lengths, total)


def format_trace(trace: RoutingTrace) -> str:
    """Line-per-hop text: "i:k -> i:k length=<..>" rows, then a summary
    "total=<..> geodesic=<..> stretch=<..>" (dashes when unfilled)."""
    lines = []
    for idx, hop in enumerate(trace.hop_lengths):
        lines.append(f"{trace.path[idx]} -> {trace.path[idx + 1]} "
                     f"length={hop:.12g}")
    geo = f"{trace.geodesic:.12g}" if trace.geodesic is not None else "-"
    stretch = f"{trace.stretch:.12g}" if trace.stretch is not None else "-"
    lines.append(f"total={trace.routing_distance:.12g} geodesic={geo} "
                 f"stretch={stretch}")
    return "\n".join(lines) + "\n"
