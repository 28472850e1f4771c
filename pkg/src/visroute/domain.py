"""Polygonal-domain data model: boundary chains, vertex labels, inner
angles and base rays, plus parsing, validation, and serialization.

Canonical in-memory orientation: the outer chain is counterclockwise,
hole chains are clockwise.  All angle math downstream assumes this, so
the constructor enforces it and the parser auto-normalizes reversed
input (recording a notice).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, OrientationCorruptionError
from .geometry import (
    Point,
    clockwise_angle,
    distance,
    rotate_clockwise,
    segments_intersect,
    unit,
)

OUTER = "outer"
HOLE = "hole"

# ceil(log2 x) with the convention ceil(log2 1) = 0, so a lone boundary
# index contributes no label bits.


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 requires a positive integer")
    return (x - 1).bit_length()


class VertexLabel(NamedTuple):
    """Wire identity of a vertex: boundary index i, vertex index k."""

    i: int
    k: int

    def __str__(self) -> str:
        return f"{self.i}:{self.k}"

    @classmethod
    def parse(cls, text: str) -> VertexLabel:
        head, sep, tail = text.partition(":")
        if not sep:
            raise ValueError(f"label must look like 'i:k', got {text!r}")
        try:
            i = int(head)
            k = int(tail)
        except ValueError:
            raise ValueError(f"label must look like 'i:k', got {text!r}") from None
        if i < 0 or k < 0:
            raise ValueError(f"label indices must be nonnegative, got {text!r}")
        return cls(i, k)


def signed_area(vertices) -> float:
    """Shoelace area: positive for counterclockwise chains."""
    total = 0.0
    m = len(vertices)
    for a in range(m):
        b = (a + 1) % m
        total += vertices[a][0] * vertices[b][1] - vertices[b][0] * vertices[a][1]
    return total / 2.0


def _chain_contains(vertices, pt) -> bool:
    # even-odd ray cast toward +x; undefined for pt exactly on the chain
    px, py = pt[0], pt[1]
    inside = False
    m = len(vertices)
    j = m - 1
    for i in range(m):
        yi = vertices[i][1]
        yj = vertices[j][1]
        if (yi > py) != (yj > py):
            xi = vertices[i][0]
            xj = vertices[j][0]
            xcross = xj + (py - yj) * (xi - xj) / (yi - yj)
            if px < xcross:
                inside = not inside
        j = i
    return inside


@dataclass(frozen=True)
class Boundary:
    kind: str
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.kind not in (OUTER, HOLE):
            raise DomainError(f"boundary kind must be 'outer' or 'hole', got {self.kind!r}")
        if len(self.vertices) < 3:
            raise DomainError("each boundary needs at least 3 vertices")
        m = len(self.vertices)
        for a in range(m):
            if self.vertices[a] == self.vertices[(a + 1) % m]:
                raise DomainError(f"duplicate consecutive vertices at position {a}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        return signed_area(self.vertices)


@dataclass(frozen=True)
class PolygonalDomain:
    """Boundary chains of the free space, with the counts the size bounds
    are stated in: h boundaries (outer included), n total vertices."""

    boundaries: tuple[Boundary, ...]
    notices: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.boundaries:
            raise DomainError("a domain needs at least one boundary")
        outers = [b for b in self.boundaries if b.kind == OUTER]
        if len(outers) > 1:
            raise DomainError("at most one outer boundary is allowed")
        for pos, b in enumerate(self.boundaries):
            area = b.area
            if area == 0.0:
                raise DomainError(f"boundary {pos} has zero area")
            if b.kind == OUTER and area < 0.0:
                raise DomainError(f"outer boundary {pos} must be counterclockwise")
            if b.kind == HOLE and area > 0.0:
                raise DomainError(f"hole boundary {pos} must be clockwise")

    @property
    def h(self) -> int:
        return len(self.boundaries)

    @property
    def n(self) -> int:
        return sum(b.n for b in self.boundaries)

    @property
    def boundary_sizes(self) -> tuple[int, ...]:
        return tuple(b.n for b in self.boundaries)

    @cached_property
    def outer_index(self):
        for pos, b in enumerate(self.boundaries):
            if b.kind == OUTER:
                return pos
        return None

    @cached_property
    def _offsets(self) -> tuple[int, ...]:
        offs = [0]
        for b in self.boundaries:
            offs.append(offs[-1] + b.n)
        return tuple(offs)

    def check_label(self, v: VertexLabel) -> None:
        if not (0 <= v.i < self.h and 0 <= v.k < self.boundaries[v.i].n):
            raise DomainError(f"label {v} does not exist in this domain")

    def vertex(self, v: VertexLabel) -> Point:
        self.check_label(v)
        return self.boundaries[v.i].vertices[v.k]

    def labels(self) -> Iterator[VertexLabel]:
        for i, b in enumerate(self.boundaries):
            for k in range(b.n):
                yield VertexLabel(i, k)

    def global_index(self, v: VertexLabel) -> int:
        self.check_label(v)
        return self._offsets[v.i] + v.k

    def label_at(self, g: int) -> VertexLabel:
        if not (0 <= g < self.n):
            raise DomainError(f"global vertex index {g} out of range")
        for i in range(self.h):
            if g < self._offsets[i + 1]:
                return VertexLabel(i, g - self._offsets[i])
        raise AssertionError("unreachable")

    def neighbors(self, v: VertexLabel) -> tuple[VertexLabel, VertexLabel]:
        """(predecessor, successor) along v's chain in storage order."""
        self.check_label(v)
        ni = self.boundaries[v.i].n
        return (VertexLabel(v.i, (v.k - 1) % ni), VertexLabel(v.i, (v.k + 1) % ni))

    def edges(self) -> Iterator[tuple[VertexLabel, VertexLabel]]:
        for i, b in enumerate(self.boundaries):
            for k in range(b.n):
                yield (VertexLabel(i, k), VertexLabel(i, (k + 1) % b.n))

    @cached_property
    def coord_arrays(self):
        """(xs, ys, chain_offsets, outer_index_or_minus1) for the kernels."""
        xs = np.empty(self.n, dtype=np.float64)
        ys = np.empty(self.n, dtype=np.float64)
        g = 0
        for b in self.boundaries:
            for p in b.vertices:
                xs[g] = p.x
                ys[g] = p.y
                g += 1
        offs = np.asarray(self._offsets, dtype=np.int64)
        outer = self.outer_index if self.outer_index is not None else -1
        return xs, ys, offs, outer

    def contains_interior_point(self, pt) -> bool:
        """Even-odd test against all chains: inside the outer chain (if
        any) and outside every hole.  Undefined for points exactly on a
        boundary."""
        for pos, b in enumerate(self.boundaries):
            par = _chain_contains(b.vertices, pt)
            if pos == self.outer_index:
                if not par:
                    return False
            elif par:
                return False
        return True


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "validation: ok"
        lines = [f"validation: {len(self.violations)} violation(s)"]
        lines.extend(str(v) for v in self.violations)
        return "\n".join(lines)


def _chain_simple_violations(pos: int, b: Boundary) -> list[Violation]:
    out = []
    m = b.n
    edges = [(b.vertices[k], b.vertices[(k + 1) % m]) for k in range(m)]
    for a in range(m):
        for c in range(a + 1, m):
            adjacent = (c - a == 1) or (a == 0 and c == m - 1)
            if adjacent:
                continue
            if segments_intersect(edges[a], edges[c]):
                out.append(Violation(
                    "self-intersection",
                    f"boundary {pos}: edges {a} and {c} intersect"))
    return out


def validate(d: PolygonalDomain, *, check_collinear: bool = True,
             max_reported: int = 20) -> ValidationReport:
    """Check the structural assumptions: simple chains, pairwise disjoint
    chains, holes inside the outer chain and not nested, and (optionally,
    an exhaustive cubic scan) no three vertices on a common line."""
    out: list[Violation] = []
    for pos, b in enumerate(d.boundaries):
        out.extend(_chain_simple_violations(pos, b))
    for pa in range(d.h):
        for pb in range(pa + 1, d.h):
            ba, bb = d.boundaries[pa], d.boundaries[pb]
            hit = False
            for ka in range(ba.n):
                ea = (ba.vertices[ka], ba.vertices[(ka + 1) % ba.n])
                for kb in range(bb.n):
                    eb = (bb.vertices[kb], bb.vertices[(kb + 1) % bb.n])
                    if segments_intersect(ea, eb):
                        out.append(Violation(
                            "chain-intersection",
                            f"boundaries {pa} and {pb} intersect "
                            f"(edges {ka} and {kb})"))
                        hit = True
                        break
                if hit:
                    break
    oi = d.outer_index
    for pos, b in enumerate(d.boundaries):
        if b.kind != HOLE:
            continue
        if oi is not None:
            outer = d.boundaries[oi].vertices
            outside = [k for k in range(b.n)
                       if not _chain_contains(outer, b.vertices[k])]
            if outside:
                out.append(Violation(
                    "containment",
                    f"hole {pos}: vertex {outside[0]} lies outside the outer boundary"))
        for other_pos, other in enumerate(d.boundaries):
            if other_pos == pos or other.kind != HOLE:
                continue
            if _chain_contains(other.vertices, b.vertices[0]):
                out.append(Violation(
                    "containment",
                    f"hole {pos} lies inside hole {other_pos}"))
    if check_collinear:
        xs, ys, _, _ = d.coord_arrays
        triples = np.zeros((max_reported, 3), dtype=np.int64)
        total = kernels.collinear_triples(xs, ys, max_reported, triples)
        for r in range(min(total, max_reported)):
            a, b_, c = (d.label_at(int(triples[r, idx])) for idx in range(3))
            out.append(Violation(
                "collinear", f"vertices {a}, {b_}, {c} lie on a common line"))
        if total > max_reported:
            out.append(Violation(
                "collinear",
                f"{total - max_reported} further collinear triples not listed"))
    return ValidationReport(tuple(out))


def parse_domain(text, *, check_collinear: bool = True) -> PolygonalDomain:
    """Read the domain file format and return a validated domain.

    Boundary orientations are auto-normalized: a clockwise outer chain or
    a counterclockwise hole is reversed, with a notice in the result.
    Raises DomainError for syntax problems, structural problems, or any
    validation violation (the report text is attached to the error).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"domain file is not valid JSON: {exc}") from exc
    return domain_from_obj(obj, check_collinear=check_collinear)


def domain_from_obj(obj, *, check_collinear: bool = True) -> PolygonalDomain:
    """parse_domain for already-decoded JSON data."""
    if not isinstance(obj, dict) or "boundaries" not in obj:
        raise DomainError("domain file must be an object with a 'boundaries' key")
    raw = obj["boundaries"]
    if not isinstance(raw, list) or not raw:
        raise DomainError("'boundaries' must be a non-empty array")
    boundaries = []
    notices = []
    for pos, item in enumerate(raw):
        if not isinstance(item, dict):
            raise DomainError(f"boundary {pos} must be an object")
        kind = item.get("kind")
        if kind not in (OUTER, HOLE):
            raise DomainError(f"boundary {pos}: kind must be 'outer' or 'hole'")
        verts_raw = item.get("vertices")
        if not isinstance(verts_raw, list) or len(verts_raw) < 3:
            raise DomainError(f"boundary {pos} needs at least 3 vertices")
        pts = []
        for vpos, pair in enumerate(verts_raw):
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(c, (int, float)) and not isinstance(c, bool)
                               for c in pair)):
                raise DomainError(
                    f"boundary {pos}, vertex {vpos}: expected a [x, y] pair")
            x, y = float(pair[0]), float(pair[1])
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DomainError(
                    f"boundary {pos}, vertex {vpos}: coordinates must be finite")
            pts.append(Point(x, y))
        area = signed_area(pts)
        if area == 0.0:
            raise DomainError(f"boundary {pos} has zero area")
        wrong_way = (kind == OUTER and area < 0.0) or (kind == HOLE and area > 0.0)
        if wrong_way:
            pts.reverse()
            want = "counterclockwise" if kind == OUTER else "clockwise"
            notices.append(f"boundary {pos} reversed to {want} orientation")
        boundaries.append(Boundary(kind, tuple(pts)))
    d = PolygonalDomain(tuple(boundaries), tuple(notices))
    report = validate(d, check_collinear=check_collinear)
    if not report.ok:
        err = DomainError(f"domain failed validation\n{report}")
        err.report = report
        raise err
    return d


def domain_to_obj(d: PolygonalDomain) -> dict:
    return {
        "boundaries": [
            {"kind": b.kind, "vertices": [[p.x, p.y] for p in b.vertices]}
            for b in d.boundaries
        ]
    }


def serialize_domain(d: PolygonalDomain) -> str:
    """Deterministic JSON for the domain file format; parse_domain of the
    result reproduces the domain exactly (float repr round-trips)."""
    return json.dumps(domain_to_obj(d), indent=2) + "\n"


def base_ray(d: PolygonalDomain, v: VertexLabel) -> Point:
    """Unit direction of the base ray at v: toward the clockwise neighbor
    on the outer chain, the counterclockwise neighbor on a hole.  With
    the canonical storage orientations both are the predecessor."""
    pred, _ = d.neighbors(v)
    p = d.vertex(v)
    return unit(Point(d.vertex(pred).x - p.x, d.vertex(pred).y - p.y))


def inner_angle(d: PolygonalDomain, v: VertexLabel) -> float:
    """Interior angle at v in (0, 2*pi): the clockwise sweep from the
    base ray to the direction of v's other chain neighbor.

    The sweep must cover the interior sector, which is verified by
    stepping a small distance along the sector bisector and testing
    containment; failure means the stored orientation contradicts the
    geometry and raises OrientationCorruptionError.
    """
    pred, succ = d.neighbors(v)
    p = d.vertex(v)
    pp = d.vertex(pred)
    sp = d.vertex(succ)
    base = unit(Point(pp.x - p.x, pp.y - p.y))
    succ_dir = unit(Point(sp.x - p.x, sp.y - p.y))
    alpha = clockwise_angle(base, succ_dir)
    if alpha == 0.0:
        raise OrientationCorruptionError(
            f"neighbors of {v} subtend a zero interior angle")
    bis = rotate_clockwise(base, alpha / 2.0)
    step = 1e-3 * min(distance(p, pp), distance(p, sp))
    for _ in range(6):
        probe = (p.x + step * bis.x, p.y + step * bis.y)
        if d.contains_interior_point(probe):
            return alpha
        step /= 64.0
    raise OrientationCorruptionError(
        f"interior-sector probe failed at {v}; boundary orientation is corrupt")


def label_bits(d: PolygonalDomain) -> int:
    """Bits in one vertex label: boundary index plus vertex index."""
    return ceil_log2(d.h) + ceil_log2(d.n)
