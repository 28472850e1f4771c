"""Per-source shortest path trees over the visibility graph: distances,
parents, first edges, and subtree enumeration."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .domain import VertexLabel
from .errors import DisconnectedGraphError, GeneralPositionWarning
from .visibility import VisibilityGraph


@dataclass(frozen=True)
class ShortestPathTree:
    graph: VisibilityGraph
    source: VertexLabel
    dist: np.ndarray    # float64 geodesic length per global index
    parent: np.ndarray  # int64 parent global index, -1 at the source
    near_ties: int

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def dist_to(self, v: VertexLabel) -> float:
        return float(self.dist[self.graph.domain.global_index(v)])

    def parent_of(self, v: VertexLabel):
        p = int(self.parent[self.graph.domain.global_index(v)])
        return None if p < 0 else self.graph.domain.label_at(p)

    @cached_property
    def _children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            p = int(self.parent[v])
            if p >= 0:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def _root_child(self) -> np.ndarray:
        # depth-1 ancestor per vertex, -1 at the source
        src = self.graph.domain.global_index(self.source)
        rc = np.full(self.n, -1, dtype=np.int64)
        stack = list(self._children[src])
        for c in stack:
            rc[c] = c
        while stack:
            v = stack.pop()
            for u in self._children[v]:
                rc[u] = rc[v]
                stack.append(u)
        return rc

    def children_of(self, v: VertexLabel) -> tuple[VertexLabel, ...]:
        dom = self.graph.domain
        return tuple(dom.label_at(c)
                     for c in self._children[dom.global_index(v)])


def shortest_path_tree(g: VisibilityGraph, s: VertexLabel) -> ShortestPathTree:
    """Dijkstra from s; heap ties break toward smaller vertex index, so
    runs are reproducible.  Near-tied alternate shortest paths (within a
    relative 1e-9) mean the uniqueness assumption is numerically shaky
    and raise a general-position warning, not an error."""
    src = g.domain.global_index(s)
    dist = np.empty(g.n, dtype=np.float64)
    parent = np.empty(g.n, dtype=np.int64)
    ties = kernels.dijkstra(g.indptr, g.indices, g.weights, src, dist, parent)
    if np.isinf(dist).any():
        missing = int(np.isinf(dist).sum())
        raise DisconnectedGraphError(
            f"{missing} vertices unreachable from {s}; the graph is disconnected")
    if ties:
        warnings.warn(
            f"{ties} near-tied shortest path(s) from {s}; uniqueness assumption "
            "is numerically violated", GeneralPositionWarning, stacklevel=2)
    return ShortestPathTree(g, s, dist, parent, int(ties))


def first_edge(t: ShortestPathTree, q: VertexLabel) -> VertexLabel:
    """The child of the source on the source-to-q tree path."""
    if q == t.source:
        raise ValueError("first_edge is undefined for the source itself")
    g = t.graph.domain.global_index(q)
    return t.graph.domain.label_at(int(t._root_child[g]))


def subtree_vertices(t: ShortestPathTree, c: VertexLabel) -> tuple[VertexLabel, ...]:
    """All vertices in the subtree rooted at c, which must be a child of
    the source; c itself is included."""
    dom = t.graph.domain
    src = dom.global_index(t.source)
    gc = dom.global_index(c)
    if int(t.parent[gc]) != src:
        raise ValueError(f"{c} is not a child of the source {t.source}")
    out = []
    stack = [gc]
    while stack:
        v = stack.pop()
        out.append(dom.label_at(v))
        stack.extend(t._children[v])
    return tuple(out)
