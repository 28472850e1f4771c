"""Pure-Python reference kernels.

These are the fallback implementations of the three hot loops: the
all-pairs visibility matrix, single-source Dijkstra, and the exhaustive
collinear-triple scan.  The compiled twins in _fast.pyx perform the same
floating-point operations in the same order, so both backends produce
bit-identical outputs; the test suite asserts exact equality.

All kernels work on flat numpy arrays so the two backends share one call
signature.  Output arrays are allocated (and zeroed where noted) by the
caller.
"""

from __future__ import annotations

import heapq
import math

NEAR_TIE_RTOL = 1e-9


def collinear_triples(xs, ys, max_report, out_triples):
    """Count collinear vertex triples a < b < c over all global indices.

    The first min(count, max_report) triples are written to out_triples,
    an (max_report, 3) integer array.  Returns the total count.  The
    cross-product zero test is exact for integer-valued coordinates of
    magnitude <= 2**25 (and for such integers scaled by one common power
    of two).
    """
    n = xs.shape[0]
    count = 0
    for a in range(n):
        ax = xs[a]
        ay = ys[a]
        for b in range(a + 1, n):
            abx = xs[b] - ax
            aby = ys[b] - ay
            for c in range(b + 1, n):
                det = abx * (ys[c] - ay) - aby * (xs[c] - ax)
                if det == 0.0:
                    if count < max_report:
                        out_triples[count, 0] = a
                        out_triples[count, 1] = b
                        out_triples[count, 2] = c
                    count += 1
    return count


def _properly_cross(ax, ay, bx, by, cx, cy, dx, dy):
    # strict double-straddle; endpoint contact does not count
    o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    if o1 * o2 >= 0.0:
        return False
    o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    return o3 * o4 < 0.0


def _point_in_chain(xs, ys, lo, hi, px, py):
    # even-odd ray cast toward +x for one closed chain [lo, hi)
    inside = False
    j = hi - 1
    for i in range(lo, hi):
        yi = ys[i]
        yj = ys[j]
        if (yi > py) != (yj > py):
            xcross = xs[j] + (py - yj) * (xs[i] - xs[j]) / (yi - yj)
            if px < xcross:
                inside = not inside
        j = i
    return inside


def visibility_matrix(xs, ys, chain_offsets, outer_index, out):
    """Fill the symmetric visibility matrix for a polygonal domain.

    Vertices of chain i occupy global indices
    [chain_offsets[i], chain_offsets[i+1]); outer_index is the position
    of the outer chain or -1 if the domain has no outer chain.  out is
    an (n, n) uint8 array, zeroed by the caller; visible pairs get 1.
    Returns the number of pairs rejected because the open segment passes
    through a third vertex (a general-position violation).
    """
    n = xs.shape[0]
    h = chain_offsets.shape[0] - 1
    chain_of = [0] * n
    for i in range(h):
        for g in range(chain_offsets[i], chain_offsets[i + 1]):
            chain_of[g] = i
    grazing = 0
    for a in range(n):
        ax = xs[a]
        ay = ys[a]
        ca = chain_of[a]
        lo_a = chain_offsets[ca]
        ni_a = chain_offsets[ca + 1] - lo_a
        for b in range(a + 1, n):
            bx = xs[b]
            by = ys[b]
            if chain_of[b] == ca:
                ka = a - lo_a
                kb = b - lo_a
                if kb - ka == 1 or (ka == 0 and kb == ni_a - 1):
                    out[a, b] = 1
                    out[b, a] = 1
                    continue
            vis = True
            # a third vertex on the open segment ab breaks general position
            for w in range(n):
                if w == a or w == b:
                    continue
                wx = xs[w]
                wy = ys[w]
                det = (bx - ax) * (wy - ay) - (by - ay) * (wx - ax)
                if det == 0.0:
                    if (min(ax, bx) <= wx <= max(ax, bx)
                            and min(ay, by) <= wy <= max(ay, by)):
                        grazing += 1
                        vis = False
                        break
            if vis:
                for i in range(h):
                    lo = chain_offsets[i]
                    hi = chain_offsets[i + 1]
                    u = hi - 1
                    for v in range(lo, hi):
                        # edges incident to a or b cannot properly cross ab
                        if u != a and u != b and v != a and v != b:
                            if _properly_cross(ax, ay, bx, by,
                                               xs[u], ys[u], xs[v], ys[v]):
                                vis = False
                                break
                        u = v
                    if not vis:
                        break
            if vis:
                mx = (ax + bx) / 2.0
                my = (ay + by) / 2.0
                for i in range(h):
                    par = _point_in_chain(xs, ys, chain_offsets[i],
                                          chain_offsets[i + 1], mx, my)
                    if i == outer_index:
                        if not par:
                            vis = False
                            break
                    else:
                        if par:
                            vis = False
                            break
            if vis:
                out[a, b] = 1
                out[b, a] = 1
    return grazing


def dijkstra(indptr, indices, weights, source, dist, parent):
    """Single-source shortest paths over a CSR graph.

    dist (float64) and parent (int64) are output arrays of length n;
    parent[source] is set to -1, unreachable vertices keep dist=inf and
    parent=-1.  Heap keys are (distance, vertex), so ties break toward
    the smaller vertex index.  Returns the number of near-tie events:
    non-tree in-edges (u, v) with dist[u] + w within relative 1e-9 of
    dist[v], i.e. alternate shortest paths that violate the uniqueness
    assumption.
    """
    n = dist.shape[0]
    for v in range(n):
        dist[v] = math.inf
        parent[v] = -1
    settled = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            nd = d + weights[e]
            if not settled[u] and nd < dist[u]:
                dist[u] = nd
                parent[u] = v
                heapq.heappush(heap, (nd, u))
    near_ties = 0
    for v in range(n):
        if dist[v] == math.inf:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u == parent[v] or dist[u] == math.inf:
                continue
            if dist[u] + weights[e] <= dist[v] + NEAR_TIE_RTOL * (1.0 + dist[v]):
                near_ties += 1
    return near_ties
