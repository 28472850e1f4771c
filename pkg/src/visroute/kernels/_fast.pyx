# cython: language_level=3
"""Compiled kernels: operation-order twins of the pure-Python reference
implementations in _ref.py.

Every floating-point expression here matches _ref.py token for token,
and the manual binary heap pops (distance, vertex) keys in the same
strict total order as the reference heap, so both backends produce
bit-identical outputs.  Any change must be made in both files.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport INFINITY
from libc.stdint cimport int64_t, uint8_t

NEAR_TIE_RTOL = 1e-9

cdef double _NEAR_TIE_RTOL = 1e-9


def collinear_triples(double[::1] xs, double[::1] ys, int64_t max_report,
                      int64_t[:, ::1] out_triples):
    """See _ref.collinear_triples."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int64_t count = 0
    cdef double ax, ay, abx, aby, det
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


cdef inline bint _properly_cross(double ax, double ay, double bx, double by,
                                 double cx, double cy, double dx,
                                 double dy) noexcept:
    cdef double o1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    cdef double o2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    if o1 * o2 >= 0.0:
        return False
    cdef double o3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    cdef double o4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    return o3 * o4 < 0.0


cdef inline bint _point_in_chain(double[::1] xs, double[::1] ys,
                                 Py_ssize_t lo, Py_ssize_t hi, double px,
                                 double py) noexcept:
    cdef bint inside = False
    cdef Py_ssize_t j = hi - 1
    cdef Py_ssize_t i
    cdef double yi, yj, xcross
    for i in range(lo, hi):
        yi = ys[i]
        yj = ys[j]
        if (yi > py) != (yj > py):
            xcross = xs[j] + (py - yj) * (xs[i] - xs[j]) / (yi - yj)
            if px < xcross:
                inside = not inside
        j = i
    return inside


def visibility_matrix(double[::1] xs, double[::1] ys,
                      int64_t[::1] chain_offsets, int64_t outer_index,
                      uint8_t[:, ::1] out):
    """See _ref.visibility_matrix."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t h = chain_offsets.shape[0] - 1
    cdef int64_t* chain_of = <int64_t*> PyMem_Malloc(n * sizeof(int64_t))
    if chain_of == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, g, a, b, w, lo, hi, u, v
    cdef int64_t grazing = 0
    cdef int64_t ca, lo_a, ni_a, ka, kb
    cdef double ax, ay, bx, by, wx, wy, det, mx, my
    cdef bint vis, par
    try:
        for i in range(h):
            for g in range(chain_offsets[i], chain_offsets[i + 1]):
                chain_of[g] = i
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
    finally:
        PyMem_Free(chain_of)
    return grazing


cdef inline bint _heap_less(double d1, int64_t v1, double d2,
                            int64_t v2) noexcept:
    if d1 != d2:
        return d1 < d2
    return v1 < v2


cdef inline void _heap_push(double* hk, int64_t* hv, Py_ssize_t* size,
                            double d, int64_t v) noexcept:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t p
    size[0] = i + 1
    hk[i] = d
    hv[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if _heap_less(hk[i], hv[i], hk[p], hv[p]):
            hk[i], hk[p] = hk[p], hk[i]
            hv[i], hv[p] = hv[p], hv[i]
            i = p
        else:
            break


cdef inline void _sift_down(double* hk, int64_t* hv, Py_ssize_t size,
                            Py_ssize_t i) noexcept:
    cdef Py_ssize_t child
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and _heap_less(hk[child + 1], hv[child + 1],
                                           hk[child], hv[child]):
            child += 1
        if _heap_less(hk[child], hv[child], hk[i], hv[i]):
            hk[i], hk[child] = hk[child], hk[i]
            hv[i], hv[child] = hv[child], hv[i]
            i = child
        else:
            break


def dijkstra(int64_t[::1] indptr, int64_t[::1] indices, double[::1] weights,
             int64_t source, double[::1] dist, int64_t[::1] parent):
    """See _ref.dijkstra."""
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t cap = indptr[n] + 1
    cdef uint8_t* settled = <uint8_t*> PyMem_Malloc(n * sizeof(uint8_t))
    cdef double* hk = <double*> PyMem_Malloc(cap * sizeof(double))
    cdef int64_t* hv = <int64_t*> PyMem_Malloc(cap * sizeof(int64_t))
    if settled == NULL or hk == NULL or hv == NULL:
        PyMem_Free(settled)
        PyMem_Free(hk)
        PyMem_Free(hv)
        raise MemoryError()
    cdef Py_ssize_t size = 0
    cdef Py_ssize_t v, e
    cdef int64_t u
    cdef double d, nd
    cdef int64_t near_ties = 0
    try:
        for v in range(n):
            dist[v] = INFINITY
            parent[v] = -1
            settled[v] = 0
        dist[source] = 0.0
        _heap_push(hk, hv, &size, 0.0, source)
        while size > 0:
            d = hk[0]
            v = hv[0]
            size -= 1
            if size > 0:
                hk[0] = hk[size]
                hv[0] = hv[size]
                _sift_down(hk, hv, size, 0)
            if settled[v]:
                continue
            settled[v] = 1
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                nd = d + weights[e]
                if not settled[u] and nd < dist[u]:
                    dist[u] = nd
                    parent[u] = v
                    _heap_push(hk, hv, &size, nd, u)
        for v in range(n):
            if dist[v] == INFINITY:
                continue
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e]
                if u == parent[v] or dist[u] == INFINITY:
                    continue
                if dist[u] + weights[e] <= dist[v] + _NEAR_TIE_RTOL * (1.0 + dist[v]):
                    near_ties += 1
    finally:
        PyMem_Free(settled)
        PyMem_Free(hk)
        PyMem_Free(hv)
    return near_ties
