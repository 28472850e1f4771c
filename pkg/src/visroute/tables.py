"""Routing-table compilation: per vertex and cone, the cyclic interval
of each boundary's vertex indices whose shortest path leaves through
that cone, plus the nearest visible vertex of the cone.

The builder follows the constant-overhead recipe: subtree vertices are
grouped by boundary with a reusable bucket array (touched buckets are
tracked and reset afterwards), and interval endpoints are found by a
prune-and-search halving recursion rather than a full scan.
"""

from __future__ import annotations

import json
import warnings
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .cones import ConeFan, build_fan, cone_index
from .domain import (
    PolygonalDomain,
    VertexLabel,
    ceil_log2,
    domain_from_obj,
    domain_to_obj,
)
from .errors import GeneralPositionWarning, HeaderMismatchError, NonIntervalError
from .spt import ShortestPathTree, shortest_path_tree, subtree_vertices
from .visibility import VisibilityGraph

TABLES_FORMAT_VERSION = 1


class CyclicInterval(NamedTuple):
    """Index range modulo a boundary's vertex count: [k1..k2] when
    k1 <= k2, otherwise wrapping through 0."""

    k1: int
    k2: int

    def contains(self, k: int) -> bool:
        if self.k1 <= self.k2:
            return self.k1 <= k <= self.k2
        return k >= self.k1 or k <= self.k2

    def size(self, ni: int) -> int:
        if self.k1 <= self.k2:
            return self.k2 - self.k1 + 1
        return ni - self.k1 + self.k2 + 1

    def indices(self, ni: int) -> Iterable[int]:
        for step in range(self.size(ni)):
            yield (self.k1 + step) % ni


def _find_gap(member, members_sorted, lo: int, hi: int) -> int:
    # invariant: [lo, hi) contains at least one non-member index
    while hi - lo > 1:
        mid = lo + (hi - lo + 1) // 2
        in_left = bisect_left(members_sorted, mid) - bisect_left(members_sorted, lo)
        in_right = bisect_left(members_sorted, hi) - bisect_left(members_sorted, mid)
        left_full = in_left == mid - lo
        right_full = in_right == hi - mid
        if not left_full and not right_full:
            # an interval restricted to [lo, hi) is a prefix run plus a
            # suffix run, so one of these four must be a gap
            for cand in (lo, mid - 1, mid, hi - 1):
                if not member[cand]:
                    return cand
            raise NonIntervalError(
                "member set is not a cyclic interval (both halves deficient, "
                "all four boundary candidates present)")
        if left_full:
            lo = mid
        else:
            hi = mid
    return lo


def extract_interval(member) -> CyclicInterval | None:
    """The cyclic interval formed by the true positions of `member`, a
    per-index boolean sequence over one boundary.

    Returns None when no index is a member and the full interval
    [0, n-1] when all are.  Otherwise a gap is located by halving
    (counting members to the left and right of the midpoint and
    recursing into the deficient side), the interval endpoints are read
    off from the member positions, and the result is verified; a member
    set that is not a cyclic interval raises NonIntervalError.
    """
    n = len(member)
    if n < 3:
        raise ValueError("boundaries have at least 3 vertices")
    members_sorted = [k for k in range(n) if member[k]]
    cnt = len(members_sorted)
    if cnt == 0:
        return None
    if cnt == n:
        return CyclicInterval(0, n - 1)
    gap = _find_gap(member, members_sorted, 0, n)
    pos = bisect_right(members_sorted, gap)
    k1 = members_sorted[pos] if pos < cnt else members_sorted[0]
    k2 = (k1 + cnt - 1) % n
    if k1 + cnt <= n:
        ok = members_sorted == list(range(k1, k1 + cnt))
    else:
        wrap = k1 + cnt - n
        ok = members_sorted == list(range(wrap)) + list(range(k1, n))
    if not ok:
        raise NonIntervalError(
            f"member set {members_sorted} on a boundary of {n} vertices "
            "is not a cyclic interval")
    return CyclicInterval(k1, k2)


@dataclass(frozen=True)
class TableEntry:
    """One routing-table row: targets on boundary `hole` whose indices
    fall in `interval` are forwarded to `via`, the nearest visible
    vertex in cone `cone`.  The cone index is diagnostic only and not
    part of the accounted entry size."""

    hole: int
    interval: CyclicInterval
    via: VertexLabel
    cone: int

    @property
    def k1(self) -> int:
        return self.interval.k1

    @property
    def k2(self) -> int:
        return self.interval.k2

    def covers(self, target: VertexLabel) -> bool:
        return target.i == self.hole and self.interval.contains(target.k)


@dataclass(frozen=True)
class RoutingTable:
    owner: VertexLabel
    entries: tuple[TableEntry, ...]
    _lookup_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def entries_for_hole(self, i: int) -> tuple[TableEntry, ...]:
        by_hole = self._lookup_cache.get("by_hole")
        if by_hole is None:
            by_hole = {}
            for e in self.entries:
                by_hole.setdefault(e.hole, []).append(e)
            by_hole = {i_: tuple(v) for i_, v in by_hole.items()}
            self._lookup_cache["by_hole"] = by_hole
        return by_hole.get(i, ())


def build_table(d: PolygonalDomain, g: VisibilityGraph,
                spt: ShortestPathTree, fan: ConeFan) -> RoutingTable:
    """Routing table for the shared apex of `spt` and `fan`.

    Per cone j: X_j is the set of the source's tree children whose edge
    direction falls in cone j; the via vertex is the closest member of
    X_j; the subtree vertices under X_j are grouped by boundary with the
    reusable bucket array and each group is emitted as one interval
    entry.
    """
    if spt.graph is not g:
        raise ValueError("shortest path tree was built over a different graph")
    p = spt.source
    if fan.apex != p:
        raise ValueError(f"fan apex {fan.apex} does not match tree source {p}")
    pp = d.vertex(p)
    src = d.global_index(p)

    by_cone: dict[int, list[VertexLabel]] = {}
    for c in spt.children_of(p):
        cp = d.vertex(c)
        j = cone_index(fan, (cp.x - pp.x, cp.y - pp.y))
        by_cone.setdefault(j, []).append(c)

    buckets: list[list[int]] = [[] for _ in range(d.h)]
    entries: list[TableEntry] = []
    for j in sorted(by_cone):
        xs = by_cone[j]
        best = min(xs, key=lambda c: (spt.dist[d.global_index(c)], c))
        best_dist = spt.dist[d.global_index(best)]
        near = [c for c in xs
                if c != best and spt.dist[d.global_index(c)] == best_dist]
        if near:
            warnings.warn(
                f"cone {j} at {p}: exact distance tie between {best} and "
                f"{near[0]}; picking the smaller label", GeneralPositionWarning,
                stacklevel=2)
        touched: list[int] = []
        for c in xs:
            for q in subtree_vertices(spt, c):
                if not buckets[q.i]:
                    touched.append(q.i)
                buckets[q.i].append(q.k)
        for i in sorted(touched):
            ni = d.boundaries[i].n
            member = bytearray(ni)
            for k in buckets[i]:
                member[k] = 1
            interval = extract_interval(member)
            assert interval is not None  # touched buckets are non-empty
            entries.append(TableEntry(i, interval, best, j))
            buckets[i].clear()
    assert src >= 0
    return RoutingTable(p, tuple(entries))


def build_all_tables(d: PolygonalDomain, g: VisibilityGraph, t: int,
                     spts=None) -> dict[VertexLabel, RoutingTable]:
    """Tables for every vertex; `spts` may supply precomputed trees in
    d.labels() order to avoid rebuilding them."""
    labels = list(d.labels())
    if spts is None:
        spts = [shortest_path_tree(g, v) for v in labels]
    tables = {}
    for v, spt in zip(labels, spts):
        fan = build_fan(d, v, t)
        tables[v] = build_table(d, g, spt, fan)
    return tables


def table_bits(tbl: RoutingTable, n: int, h: int) -> int:
    """Accounted size: entries times (2 ceil(log2 h) + 3 ceil(log2 n))
    bits, with ceil(log2 1) = 0."""
    return len(tbl.entries) * (2 * ceil_log2(h) + 3 * ceil_log2(n))


def serialize_tables(tables: Mapping[VertexLabel, RoutingTable], *,
                     epsilon: float, t: int,
                     domain: PolygonalDomain | None = None,
                     n: int | None = None, h: int | None = None) -> str:
    """Deterministic JSON for a full table set.

    The domain is embedded so a tables file alone suffices to route and
    to account hop lengths.  A header-only file (no tables, no domain)
    is allowed when n and h are passed explicitly.
    """
    if domain is not None:
        n = domain.n
        h = domain.h
    if n is None or h is None:
        raise ValueError("n and h are required when no domain is embedded")
    obj: dict = {
        "version": TABLES_FORMAT_VERSION,
        "n": n,
        "h": h,
        "epsilon": epsilon,
        "t": t,
    }
    if domain is not None:
        obj["domain"] = domain_to_obj(domain)
    obj["tables"] = [
        {
            "owner": [v.i, v.k],
            "entries": [
                {"i": e.hole, "k1": e.k1, "k2": e.k2,
                 "via": [e.via.i, e.via.k], "cone": e.cone}
                for e in tables[v].entries
            ],
        }
        for v in sorted(tables)
    ]
    return json.dumps(obj, indent=2) + "\n"


@dataclass(frozen=True)
class TableSet:
    n: int
    h: int
    epsilon: float
    t: int
    domain: PolygonalDomain | None
    tables: dict[VertexLabel, RoutingTable]


def parse_tables(text) -> TableSet:
    """Inverse of serialize_tables; raises HeaderMismatchError when the
    header disagrees with the embedded domain or the payload shape is
    off."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HeaderMismatchError(f"tables file is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise HeaderMismatchError("tables file must be a JSON object")
    if obj.get("version") != TABLES_FORMAT_VERSION:
        raise HeaderMismatchError(
            f"unsupported tables format version {obj.get('version')!r}")
    try:
        n = int(obj["n"])
        h = int(obj["h"])
        epsilon = float(obj["epsilon"])
        t = int(obj["t"])
        raw_tables = obj["tables"]
    except (KeyError, TypeError, ValueError) as exc:
        raise HeaderMismatchError(f"tables header is malformed: {exc}") from exc
    domain = None
    if "domain" in obj:
        # geometry was validated when the file was built; skip the cubic
        # collinearity rescan on load
        domain = domain_from_obj(obj["domain"], check_collinear=False)
        if domain.n != n or domain.h != h:
            raise HeaderMismatchError(
                f"header says n={n}, h={h} but the embedded domain has "
                f"n={domain.n}, h={domain.h}")
    if not isinstance(raw_tables, list):
        raise HeaderMismatchError("'tables' must be an array")
    sizes = domain.boundary_sizes if domain is not None else None
    tables: dict[VertexLabel, RoutingTable] = {}
    for item in raw_tables:
        try:
            owner = VertexLabel(int(item["owner"][0]), int(item["owner"][1]))
            entries = tuple(
                TableEntry(int(e["i"]),
                           CyclicInterval(int(e["k1"]), int(e["k2"])),
                           VertexLabel(int(e["via"][0]), int(e["via"][1])),
                           int(e["cone"]))
                for e in item["entries"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise HeaderMismatchError(f"table record is malformed: {exc}") from exc
        if sizes is not None:
            if not (0 <= owner.i < h and 0 <= owner.k < sizes[owner.i]):
                raise HeaderMismatchError(f"table owner {owner} is out of range")
            for e in entries:
                if not (0 <= e.hole < h and 0 <= e.k1 < sizes[e.hole]
                        and 0 <= e.k2 < sizes[e.hole]):
                    raise HeaderMismatchError(
                        f"entry {e} at {owner} is out of range")
        if owner in tables:
            raise HeaderMismatchError(f"duplicate table for {owner}")
        tables[owner] = RoutingTable(owner, entries)
    return TableSet(n, h, epsilon, t, domain, tables)
