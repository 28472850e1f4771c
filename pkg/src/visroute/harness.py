"""Instance generators and the verification suite.

Every guarantee the scheme makes is re-checked here through an
independent slow twin: geodesic distances via Bellman-Ford iteration,
cone membership via a per-target first-edge scan, interval extraction
via run counting, via selection via a visible-neighbor argmin, and
visibility via the per-pair oracle.  Generator coordinates are integers
up to 10**6 scaled by a power of two, so orientation predicates on them
are exact and serialized floats round-trip bit-identically.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .cones import build_fan, cone_count, cone_index
from .domain import (
    HOLE,
    OUTER,
    Boundary,
    PolygonalDomain,
    VertexLabel,
    ceil_log2,
    label_bits,
    serialize_domain,
    validate,
)
from .errors import (
    DomainError,
    GenerationError,
    GeneralPositionWarning,
    NonIntervalError,
    VisrouteError,
)
from .geometry import (
    TWO_PI,
    Orientation,
    Point,
    distance,
    orient,
    segments_properly_cross,
)
from .router import RoutingScheme, format_trace, route
from .spt import ShortestPathTree, first_edge, shortest_path_tree
from .tables import RoutingTable, build_all_tables, table_bits
from .visibility import VisibilityGraph, build_visibility_graph, visible

# Generators draw integer coordinates and scale them by a power of two:
# the scaled values are exact dyadic floats, so sign-of-determinant
# predicates on them stay exact and JSON round-trips are lossless.
SCALE = 2.0 ** -12

_MAX_ATTEMPTS = 200


def _scaled(pts_int) -> tuple[Point, ...]:
    return tuple(Point(x * SCALE, y * SCALE) for x, y in pts_int)


def _cyclic_gaps(angles) -> list[float]:
    n = len(angles)
    return [(angles[(a + 1) % n] - angles[a]) % TWO_PI for a in range(n)]


def gen_star_polygon(n: int, seed: int) -> PolygonalDomain:
    """Simple polygon: n points angularly sorted around the origin with
    radial jitter.  Star-shapedness about the origin keeps the chain
    simple; integer rounding plus validation retries enforce general
    position.  Deterministic per (n, seed)."""
    if n < 3:
        raise GenerationError(f"a polygon needs at least 3 vertices, got {n}")
    rng = random.Random(seed)
    for _ in range(_MAX_ATTEMPTS):
        angles = sorted(rng.uniform(0.0, TWO_PI) for _ in range(n))
        gaps = _cyclic_gaps(angles)
        # max gap < pi keeps the origin strictly inside (CCW guaranteed);
        # a minimum gap keeps rounded vertices well separated
        if max(gaps) >= math.pi - 0.05 or min(gaps) < 1e-4:
            continue
        pts = []
        for ang in angles:
            r = rng.uniform(350_000.0, 1_000_000.0)
            pts.append((round(r * math.cos(ang)), round(r * math.sin(ang))))
        try:
            d = PolygonalDomain((Boundary(OUTER, _scaled(pts)),))
        except DomainError:
            continue
        if validate(d).ok:
            return d
    raise GenerationError(
        f"no valid star polygon after {_MAX_ATTEMPTS} attempts "
        f"(n={n}, seed={seed})")


def _convex_ring(rng: random.Random, cx: int, cy: int, rad: int,
                 nv: int) -> list[tuple[int, int]] | None:
    for _ in range(50):
        angles = sorted(rng.uniform(0.0, TWO_PI) for _ in range(nv))
        gaps = _cyclic_gaps(angles)
        if min(gaps) < 0.4 or max(gaps) >= math.pi - 0.2:
            continue
        pts = [(cx + round(rad * math.cos(a)), cy + round(rad * math.sin(a)))
               for a in angles]
        ring = _scaled(pts)
        if all(orient(ring[a], ring[(a + 1) % nv], ring[(a + 2) % nv])
               == Orientation.COUNTERCLOCKWISE for a in range(nv)):
            return pts
    return None


def gen_holed_domain(n_outer: int, holes: int, seed: int) -> PolygonalDomain:
    """Convex outer chain on a circle with `holes` small convex holes on
    a jittered grid; h = holes + 1.  Grid cells keep holes disjoint and
    the bounded outer angular gap keeps them strictly inside."""
    if holes < 1:
        raise GenerationError(f"need at least one hole, got {holes}")
    if n_outer < 8:
        raise GenerationError(
            f"the outer chain needs at least 8 vertices for a robustly "
            f"convex ring, got {n_outer}")
    rng = random.Random(seed)
    radius = 1_000_000
    k = math.isqrt(holes - 1) + 2  # k*k > holes always
    cell = radius // k
    for _ in range(_MAX_ATTEMPTS):
        angles = sorted(rng.uniform(0.0, TWO_PI) for _ in range(n_outer))
        gaps = _cyclic_gaps(angles)
        # gap <= 1 rad bounds the inradius below ~0.877*radius, keeping
        # the central grid square (within ~0.707*radius) strictly inside
        if max(gaps) > 1.0 or min(gaps) < 0.05:
            continue
        outer_pts = [(round(radius * math.cos(a)), round(radius * math.sin(a)))
                     for a in angles]
        ring = _scaled(outer_pts)
        if not all(orient(ring[a], ring[(a + 1) % n_outer],
                          ring[(a + 2) % n_outer]) == Orientation.COUNTERCLOCKWISE
                   for a in range(n_outer)):
            continue
        chains = [Boundary(OUTER, ring)]
        ok = True
        for c in sorted(rng.sample(range(k * k), holes)):
            jx = rng.randint(-cell // 10, cell // 10)
            jy = rng.randint(-cell // 10, cell // 10)
            cx = -radius // 2 + (c % k) * cell + cell // 2 + jx
            cy = -radius // 2 + (c // k) * cell + cell // 2 + jy
            rad = rng.randint(int(0.15 * cell), int(0.20 * cell))
            ring_pts = _convex_ring(rng, cx, cy, rad, 5)
            if ring_pts is None:
                ok = False
                break
            # reverse the CCW ring: holes are stored clockwise
            chains.append(Boundary(HOLE, _scaled(reversed(ring_pts))))
        if not ok:
            continue
        try:
            d = PolygonalDomain(tuple(chains))
        except DomainError:
            continue
        if validate(d).ok:
            return d
    raise GenerationError(
        f"no valid holed domain after {_MAX_ATTEMPTS} attempts "
        f"(n_outer={n_outer}, holes={holes}, seed={seed})")


def gen_spire_polygon(m: int) -> tuple[PolygonalDomain, VertexLabel, VertexLabel]:
    """Adversary for hop counts: a long corridor whose designated pair
    (p, q) spans the bottom edge — so their hop-distance is 1 — while m
    thin ceiling spires dangle tips just above that edge.  The nearest
    visible vertex in q's cone at p is the first tip, from every tip the
    nearest in-cone vertex is the next tip, so the packet visits all m
    tips: m+1 hops, Euclidean detour still tiny.

    The construction is re-simulated after building (cone agreement at
    p, then the full routed chain) and re-jittered on failure or when
    the build flags near-tied shortest paths (tips are nearly collinear
    by design, so some jitter draws land three of them within numerical
    tolerance of one line), so the returned instance provably exhibits
    the behavior and satisfies the unique-shortest-path assumption.
    Deterministic per m."""
    if m < 2:
        raise GenerationError(f"need at least 2 spires, got {m}")
    rng = random.Random(777_000 + m)
    spacing, ceiling, half_w, tip_y = 80_000, 400_000, 10_000, 3_000
    length = (m + 1) * spacing
    t = cone_count(1.0)
    p, q = VertexLabel(0, 0), VertexLabel(0, 1)
    for _ in range(50):
        pts: list[tuple[int, int]] = [
            (0, 0),
            (length, 0),
            (length, ceiling + rng.randint(-7000, 7000)),
        ]
        for i in range(m, 0, -1):
            x = i * spacing
            pts.append((x + half_w + rng.randint(-800, 800),
                        ceiling + rng.randint(-7000, 7000)))
            pts.append((x + rng.randint(-300, 300),
                        tip_y + rng.randint(-100, 100)))
            pts.append((x - half_w + rng.randint(-800, 800),
                        ceiling + rng.randint(-7000, 7000)))
        pts.append((0, ceiling + rng.randint(-7000, 7000)))
        try:
            d = PolygonalDomain((Boundary(OUTER, _scaled(pts)),))
        except DomainError:
            continue
        if not validate(d).ok:
            continue
        fan = build_fan(d, p, t)
        pp, qp = d.vertex(p), d.vertex(q)
        tip1 = d.vertex(VertexLabel(0, 3 * m + 1))
        if (cone_index(fan, (qp.x - pp.x, qp.y - pp.y))
                != cone_index(fan, (tip1.x - pp.x, tip1.y - pp.y))):
            continue
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            scheme = RoutingScheme.build(d, 1.0)
        if any(issubclass(w.category, GeneralPositionWarning) for w in caught):
            continue
        expected = ([p]
                    + [VertexLabel(0, 4 + 3 * (m - i)) for i in range(1, m + 1)]
                    + [q])
        try:
            trace = route(scheme, p, q)
        except VisrouteError:
            continue
        if trace.path != expected:
            continue
        return d, p, q
    raise GenerationError(f"spire construction failed after 50 attempts (m={m})")


def bellman_ford_distances(g: VisibilityGraph, source: int) -> np.ndarray:
    """Single-source geodesic distances by dense min-plus iteration to a
    fixpoint — the slow, structurally independent twin of the tree
    builder."""
    w = g.weight_matrix
    n = w.shape[0]
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    for _ in range(n):
        relaxed = np.min(dist[:, None] + w, axis=0)
        if np.array_equal(relaxed, dist):
            break
        dist = relaxed
    return dist


def naive_interval(member) -> tuple[int, int] | None:
    """Run-counting reference for interval extraction: scan every index,
    demand exactly one maximal cyclic run of set flags."""
    nn = len(member)
    idxs = [k for k in range(nn) if member[k]]
    if not idxs:
        return None
    if len(idxs) == nn:
        return (0, nn - 1)
    starts = [k for k in idxs if not member[(k - 1) % nn]]
    if len(starts) != 1:
        raise NonIntervalError(
            f"member set splits into {len(starts)} runs: {idxs}")
    k1 = starts[0]
    return (k1, (k1 + len(idxs) - 1) % nn)


def naive_cone_members(d: PolygonalDomain, spt: ShortestPathTree,
                       fan) -> dict[tuple[int, int], bytearray]:
    """Per-(cone, boundary) target membership from a per-target scan of
    first shortest-path edges — the builder instead groups whole
    subtrees, so agreement exercises both traversals."""
    p = spt.source
    pp = d.vertex(p)
    member: dict[tuple[int, int], bytearray] = {}
    for tgt in d.labels():
        if tgt == p:
            continue
        c = first_edge(spt, tgt)
        cp = d.vertex(c)
        j = cone_index(fan, (cp.x - pp.x, cp.y - pp.y))
        flags = member.setdefault((j, tgt.i),
                                  bytearray(d.boundary_sizes[tgt.i]))
        flags[tgt.k] = 1
    return member


def naive_cone_vias(d: PolygonalDomain, g: VisibilityGraph,
                    fan) -> dict[int, VertexLabel]:
    """Per-cone nearest visible vertex, from the visibility graph's
    neighbor lists and an independent distance recomputation — the
    builder instead takes an argmin over tree children and tree
    distances."""
    p = fan.apex
    pp = d.vertex(p)
    best: dict[int, tuple[float, VertexLabel]] = {}
    for v, _w in g.neighbors(p):
        vp = d.vertex(v)
        j = cone_index(fan, (vp.x - pp.x, vp.y - pp.y))
        key = (distance(pp, vp), v)
        if j not in best or key < best[j]:
            best[j] = key
    return {j: lab for j, (_dd, lab) in best.items()}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexamples: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerificationReport:
    """Per-check outcomes plus the aggregate size/stretch statistics.
    Failing reports embed the serialized instance and the sampling seed
    so any counterexample can be replayed exactly."""

    n: int
    h: int
    epsilon: float
    t: int
    seed: int
    checks: tuple[CheckResult, ...]
    max_stretch: float
    max_entries: int
    total_bits: int
    instance_json: str | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self, include_instance: bool = True) -> str:
        lines = [f"verification: n={self.n} h={self.h} "
                 f"epsilon={self.epsilon:g} t={self.t} seed={self.seed}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
            for ce in c.counterexamples:
                lines.extend("  | " + ln for ln in ce.splitlines())
        lines.append(f"stats: max_stretch={self.max_stretch:.12g} "
                     f"max_entries={self.max_entries} "
                     f"total_bits={self.total_bits}")
        failed = sum(1 for c in self.checks if not c.passed)
        lines.append("result: PASS" if not failed
                     else f"result: FAIL ({failed} of {len(self.checks)} checks)")
        if include_instance and failed and self.instance_json is not None:
            lines.append("instance:")
            lines.extend("  " + ln for ln in self.instance_json.splitlines())
        return "\n".join(lines) + "\n"


def _sample_ordered_pairs(labels, count: int, rng: random.Random):
    all_pairs = [(u, v) for u in labels for v in labels if u != v]
    if count >= len(all_pairs):
        return all_pairs
    return rng.sample(all_pairs, count)


def verify_scheme(d: PolygonalDomain, epsilon: float, *,
                  pairs="all", seed: int = 0,
                  check_noncrossing: bool = True,
                  tables: Mapping[VertexLabel, RoutingTable] | None = None,
                  graph: VisibilityGraph | None = None,
                  spts=None, bf_dist=None,
                  max_counterexamples: int = 3) -> VerificationReport:
    """Run every guarantee as an executable check and report pass/fail
    per check.  `tables` may override the freshly built tables (fault
    injection); `graph`, `spts`, and `bf_dist` may supply precomputed
    artifacts to share across runs.  Deterministic per (d, epsilon,
    seed)."""
    rng = random.Random(seed)
    t = cone_count(epsilon)
    labels = list(d.labels())
    n, h = d.n, d.h
    coords = {v: d.vertex(v) for v in labels}
    if graph is None:
        graph = build_visibility_graph(d)
    if spts is None:
        spts = [shortest_path_tree(graph, v) for v in labels]
    spt_by = dict(zip(labels, spts))
    if tables is None:
        tables = build_all_tables(d, graph, t, spts=spts)

    checks: list[CheckResult] = []

    def add(name: str, failures: list[str], ok_detail: str) -> None:
        if failures:
            checks.append(CheckResult(
                name, False, f"{len(failures)} violation(s)",
                tuple(failures[:max_counterexamples])))
        else:
            checks.append(CheckResult(name, True, ok_detail))

    # --- cone count obeys its closed-form bound
    bound = TWO_PI * (1.0 + 1.0 / epsilon) + 1.0
    add("cone-count-bound",
        [] if t <= bound else [f"t={t} exceeds {bound:.6g}"],
        f"t={t} <= 2*pi*(1+1/eps)+1 = {bound:.6g}")

    # --- tree distances against the min-plus fixpoint oracle
    fails: list[str] = []
    sources = (list(range(n)) if n <= 80
               else sorted(rng.sample(range(n), 20)))
    for s in sources:
        bf = (bf_dist[s] if bf_dist is not None
              else bellman_ford_distances(graph, s))
        dij = spts[s].dist
        bad = np.nonzero(~(np.abs(dij - bf) <= 1e-9 * (1.0 + bf)))[0]
        for v in bad[:max_counterexamples]:
            fails.append(f"source {labels[s]} target {labels[v]}: "
                         f"tree {dij[v]!r} vs fixpoint {bf[v]!r}")
    add("dijkstra-vs-bellman-ford", fails,
        f"{len(sources)} sources within 1e-9 relative")

    # --- visibility edges against the per-pair oracle
    fails = []
    if n <= 40:
        vis_pairs = [(labels[a], labels[b])
                     for a in range(n) for b in range(a + 1, n)]
    else:
        universe = [(labels[a], labels[b])
                    for a in range(n) for b in range(a + 1, n)]
        vis_pairs = rng.sample(universe, min(300, len(universe)))
    for u, v in vis_pairs:
        fast = graph.has_edge(u, v)
        slow = visible(d, u, v)
        if fast != slow:
            fails.append(f"{u}--{v}: graph says {fast}, oracle says {slow}")
    add("visibility-oracle", fails, f"{len(vis_pairs)} pairs agree")

    # --- per-vertex table structure against the naive oracles
    iv_fails: list[str] = []
    stretch_fails: list[str] = []
    bound_fails: list[str] = []
    cover_fails: list[str] = []
    max_entries = 0
    for p in labels:
        tbl = tables.get(p)
        if tbl is None:
            iv_fails.append(f"no table for vertex {p}")
            continue
        max_entries = max(max_entries, len(tbl.entries))
        fan = build_fan(d, p, t)
        member = naive_cone_members(d, spt_by[p], fan)
        vias = naive_cone_vias(d, graph, fan)
        oracle: dict[tuple[int, int], tuple[int, int]] = {}
        for (j, i), flags in member.items():
            try:
                iv = naive_interval(flags)
            except NonIntervalError as exc:
                iv_fails.append(f"vertex {p} cone {j} boundary {i}: {exc}")
                continue
            assert iv is not None
            oracle[(j, i)] = iv
        built: dict[tuple[int, int], object] = {}
        for e in tbl.entries:
            key = (e.cone, e.hole)
            if key in built:
                iv_fails.append(f"vertex {p}: duplicate entry for cone "
                                f"{e.cone} boundary {e.hole}")
            built[key] = e
        for key in sorted(oracle.keys() | built.keys()):
            j, i = key
            if key not in built:
                iv_fails.append(f"vertex {p} cone {j} boundary {i}: oracle "
                                f"interval {oracle[key]} has no entry")
                continue
            if key not in oracle:
                e = built[key]
                iv_fails.append(f"vertex {p} cone {j} boundary {i}: entry "
                                f"[{e.k1},{e.k2}] not in oracle")
                continue
            e = built[key]
            if (e.k1, e.k2) != oracle[key]:
                iv_fails.append(
                    f"vertex {p} cone {j} boundary {i}: entry "
                    f"[{e.k1},{e.k2}] vs oracle {oracle[key]}")
            if vias.get(j) != e.via:
                iv_fails.append(
                    f"vertex {p} cone {j}: entry via {e.via} vs nearest "
                    f"visible in-cone vertex {vias.get(j)}")
        # at most one boundary may span cones strictly before and after j
        cones_of = {}
        for (j, i) in member:
            cones_of.setdefault(i, set()).add(j)
        for j in sorted({j for (j, _i) in member}):
            spanning = [i for i, js in cones_of.items()
                        if j in js and min(js) < j < max(js)]
            if len(spanning) > 1:
                stretch_fails.append(
                    f"vertex {p} cone {j}: boundaries {spanning} all span it")
        if len(tbl.entries) > t + 2 * h:
            bound_fails.append(
                f"vertex {p}: {len(tbl.entries)} entries > t + 2h = {t + 2 * h}")
        # intervals partition every label except the owner's
        for i in range(h):
            ni = d.boundary_sizes[i]
            cnt = [0] * ni
            for e in tbl.entries:
                if e.hole != i:
                    continue
                for k in e.interval.indices(ni):
                    cnt[k] += 1
            for k in range(ni):
                want = 0 if (i, k) == (p.i, p.k) else 1
                if cnt[k] != want:
                    cover_fails.append(
                        f"vertex {p}: label {i}:{k} covered {cnt[k]} "
                        f"times (expected {want})")
    add("interval-oracle", iv_fails,
        "entries match the first-edge scan, run counting, and "
        "visible-neighbor argmin")
    add("stretched-boundaries", stretch_fails,
        "at most one spanning boundary per cone")
    add("entry-bound", bound_fails,
        f"max {max_entries} entries <= t + 2h = {t + 2 * h}")
    add("coverage-partition", cover_fails,
        "per vertex, intervals cover each other label exactly once")

    # --- size accounting recomputed from scratch
    fails = []
    exp_h = 0 if h == 1 else math.ceil(math.log2(h))
    exp_n = 0 if n == 1 else math.ceil(math.log2(n))
    if label_bits(d) != exp_h + exp_n:
        fails.append(f"label_bits {label_bits(d)} != {exp_h + exp_n}")
    total_bits = 0
    per_entry = 2 * exp_h + 3 * exp_n
    for p in labels:
        tbl = tables.get(p)
        if tbl is None:
            continue
        got = table_bits(tbl, n, h)
        if got != len(tbl.entries) * per_entry:
            fails.append(f"vertex {p}: table_bits {got} != "
                         f"{len(tbl.entries)} * {per_entry}")
        total_bits += got
    add("bit-accounting", fails,
        f"labels {exp_h + exp_n} bits, {per_entry} bits per entry, "
        f"{total_bits} total")

    # --- routing: stretch, per-step decrease, termination
    scheme = RoutingScheme(n, h, epsilon, t, d.boundary_sizes, tables, coords)
    if pairs == "all":
        routed_pairs = [(u, v) for u in labels for v in labels if u != v]
    else:
        routed_pairs = _sample_ordered_pairs(labels, int(pairs), rng)
    stretch_viol: list[str] = []
    step_viol: list[str] = []
    term_viol: list[str] = []
    max_stretch = 0.0
    for u, v in routed_pairs:
        gidx = d.global_index
        try:
            trace = route(scheme, u, v)
        except VisrouteError as exc:
            stretch_viol.append(f"pair {u}->{v}: routing failed: {exc}")
            continue
        geo = float(spt_by[v].dist[gidx(u)])
        trace.set_geodesic(geo)
        max_stretch = max(max_stretch, trace.stretch)
        if not trace.routing_distance <= (1.0 + epsilon) * geo * (1.0 + 1e-9):
            stretch_viol.append(
                f"pair {u}->{v}: stretch {trace.stretch!r} > 1+eps\n"
                + format_trace(trace).rstrip())
        if trace.hops > n:
            term_viol.append(f"pair {u}->{v}: {trace.hops} hops > n = {n}")
        dv = spt_by[v].dist
        for step in range(trace.hops):
            dpq = float(dv[gidx(trace.path[step])])
            dsq = float(dv[gidx(trace.path[step + 1])])
            allowed = (dpq - trace.hop_lengths[step] / (1.0 + epsilon)
                       + 1e-9 * (1.0 + dpq))
            if not dsq <= allowed:
                step_viol.append(
                    f"pair {u}->{v} hop {trace.path[step]}->"
                    f"{trace.path[step + 1]}: d(s,q)={dsq!r} > "
                    f"d(p,q)-|ps|/(1+eps)={allowed!r}")
    npairs = len(routed_pairs)
    add("routing-stretch", stretch_viol,
        f"{npairs} pairs, max stretch {max_stretch:.12g} <= 1+eps = "
        f"{1.0 + epsilon:g}")
    add("per-step-decrease", step_viol,
        f"every hop of {npairs} traces decreases the remaining distance")
    add("termination", term_viol, f"all traces within n = {n} hops")

    # --- sampled check that tree edges never properly cross
    if check_noncrossing:
        fails = []
        srcs = rng.sample(labels, min(5, len(labels)))
        for src in srcs:
            spt = spt_by[src]
            segs = []
            for gi in range(n):
                par = int(spt.parent[gi])
                if par >= 0:
                    segs.append((coords[labels[par]], coords[labels[gi]],
                                 labels[par], labels[gi]))
            for a in range(len(segs)):
                for b in range(a + 1, len(segs)):
                    if segments_properly_cross((segs[a][0], segs[a][1]),
                                               (segs[b][0], segs[b][1])):
                        fails.append(
                            f"tree at {src}: edge {segs[a][2]}->{segs[a][3]} "
                            f"crosses {segs[b][2]}->{segs[b][3]}")
        add("spt-noncrossing", fails,
            f"{len(srcs)} sampled trees are crossing-free")

    failed = any(not c.passed for c in checks)
    return VerificationReport(
        n=n, h=h, epsilon=epsilon, t=t, seed=seed, checks=tuple(checks),
        max_stretch=max_stretch, max_entries=max_entries,
        total_bits=total_bits,
        instance_json=serialize_domain(d) if failed else None)
