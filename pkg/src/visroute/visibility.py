"""Visibility graph construction: vertices of the domain, edges between
mutually visible vertex pairs, weighted by Euclidean length.

Two implementations exist on purpose.  visible() is the per-pair oracle
written against the plain geometry primitives; build_visibility_graph()
runs the kernel backend over flat arrays.  The test suite holds them
equal, so a bug in one is caught by the other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .domain import PolygonalDomain, VertexLabel
from .errors import GeneralPositionWarning
from .geometry import point_on_open_segment, segments_properly_cross


def visible(d: PolygonalDomain, a: VertexLabel, b: VertexLabel) -> bool:
    """True iff the segment between a and b lies inside the closed
    region: chain-adjacent pairs are visible outright; otherwise the
    segment must cross no boundary edge properly, pass through no third
    vertex (a general-position violation, warned and rejected), and have
    its midpoint inside the region.
    """
    if a == b:
        raise ValueError("visibility is defined for distinct vertices")
    pa = d.vertex(a)
    pb = d.vertex(b)
    if a.i == b.i:
        ni = d.boundaries[a.i].n
        if (a.k - b.k) % ni in (1, ni - 1):
            return True
    for w in d.labels():
        if w == a or w == b:
            continue
        if point_on_open_segment(pa, pb, d.vertex(w)):
            warnings.warn(
                f"segment {a}-{b} grazes vertex {w}; general position violated",
                GeneralPositionWarning, stacklevel=2)
            return False
    for (u, v) in d.edges():
        if u == a or u == b or v == a or v == b:
            continue
        if segments_properly_cross((pa, pb), (d.vertex(u), d.vertex(v))):
            return False
    mid = ((pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0)
    return d.contains_interior_point(mid)


@dataclass(frozen=True)
class VisibilityGraph:
    """Symmetric weighted graph in CSR form over global vertex indices;
    per-row neighbor indices are ascending."""

    domain: PolygonalDomain
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    grazing_pairs: int

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def edge_count(self) -> int:
        return self.indices.shape[0] // 2

    def degree(self, v: VertexLabel) -> int:
        g = self.domain.global_index(v)
        return int(self.indptr[g + 1] - self.indptr[g])

    def neighbors(self, v: VertexLabel) -> list[tuple[VertexLabel, float]]:
        g = self.domain.global_index(v)
        lo, hi = int(self.indptr[g]), int(self.indptr[g + 1])
        return [(self.domain.label_at(int(self.indices[e])), float(self.weights[e]))
                for e in range(lo, hi)]

    def has_edge(self, a: VertexLabel, b: VertexLabel) -> bool:
        ga = self.domain.global_index(a)
        gb = self.domain.global_index(b)
        lo, hi = int(self.indptr[ga]), int(self.indptr[ga + 1])
        pos = int(np.searchsorted(self.indices[lo:hi], gb))
        return pos < hi - lo and int(self.indices[lo + pos]) == gb

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Dense matrix with edge weights, +inf for non-edges, 0 on the
        diagonal.  Shared input for the independent distance oracle."""
        n = self.n
        mat = np.full((n, n), np.inf)
        for v in range(n):
            lo, hi = int(self.indptr[v]), int(self.indptr[v + 1])
            mat[v, self.indices[lo:hi]] = self.weights[lo:hi]
        np.fill_diagonal(mat, 0.0)
        return mat

    def is_connected(self) -> bool:
        n = self.n
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for e in range(int(self.indptr[v]), int(self.indptr[v + 1])):
                u = int(self.indices[e])
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        return bool(seen.all())


def build_visibility_graph(d: PolygonalDomain) -> VisibilityGraph:
    """All-pairs visibility via the kernel backend: O(n) scan per pair
    (crossing tests, grazing check, midpoint parity)."""
    xs, ys, offs, outer = d.coord_arrays
    n = d.n
    mat = np.zeros((n, n), dtype=np.uint8)
    grazing = kernels.visibility_matrix(xs, ys, offs, outer, mat)
    if grazing:
        warnings.warn(
            f"{grazing} vertex pair(s) rejected for grazing a third vertex; "
            "general position violated", GeneralPositionWarning, stacklevel=2)
    counts = mat.sum(axis=1, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    rows, cols = np.nonzero(mat)
    indices = cols.astype(np.int64)
    weights = np.hypot(xs[cols] - xs[rows], ys[cols] - ys[rows])
    return VisibilityGraph(d, indptr, indices, weights, int(grazing))
