# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the per-simplex sweeps in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

cdef double _ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


cdef inline int _orient(double ax, double ay, double bx, double by,
                        double cx, double cy) nogil:
    cdef double left = (ax - cx) * (by - cy)
    cdef double right = (ay - cy) * (bx - cx)
    cdef double det = left - right
    cdef double bound = _ERRBOUND * (fabs(left) + fabs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return 0


cdef inline long _find(long[::1] parent, long x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def vertex_link_stats(lv_ptr, lv, le_ptr, le, lt_ptr, lt, rank):
    cdef const long[::1] p_v = np.ascontiguousarray(lv_ptr, dtype=np.int64)
    cdef const long[::1] a_v = np.ascontiguousarray(lv, dtype=np.int64)
    cdef const long[::1] p_e = np.ascontiguousarray(le_ptr, dtype=np.int64)
    cdef const long[::1] a_e = np.ascontiguousarray(le, dtype=np.int64)
    cdef const long[::1] p_t = np.ascontiguousarray(lt_ptr, dtype=np.int64)
    cdef const long[::1] a_t = np.ascontiguousarray(lt, dtype=np.int64)
    cdef const long[::1] rk = np.ascontiguousarray(rank, dtype=np.int64)
    cdef long n = p_v.shape[0] - 1
    out_np = np.zeros((n, 6), dtype=np.int64)
    cdef long[:, ::1] out = out_np
    cdef long[::1] parent = np.arange(rk.shape[0], dtype=np.int64)
    cdef long v, i, a, b, c, ra, rb, rv
    cdef long n_lo, n_hi, comps_lo, comps_hi, e_lo, e_hi, t_lo, t_hi
    cdef bint la, lb, lc
    with nogil:
        for v in range(n):
            rv = rk[v]
            n_lo = 0
            n_hi = 0
            for i in range(p_v[v], p_v[v + 1]):
                a = a_v[i]
                parent[a] = a
                if rk[a] < rv:
                    n_lo += 1
                else:
                    n_hi += 1
            comps_lo = n_lo
            comps_hi = n_hi
            e_lo = 0
            e_hi = 0
            for i in range(p_e[v], p_e[v + 1]):
                a = a_e[2 * i]
                b = a_e[2 * i + 1]
                la = rk[a] < rv
                lb = rk[b] < rv
                if la != lb:
                    continue
                if la:
                    e_lo += 1
                else:
                    e_hi += 1
                ra = _find(parent, a)
                rb = _find(parent, b)
                if ra != rb:
                    parent[ra] = rb
                    if la:
                        comps_lo -= 1
                    else:
                        comps_hi -= 1
            t_lo = 0
            t_hi = 0
            for i in range(p_t[v], p_t[v + 1]):
                a = a_t[3 * i]
                b = a_t[3 * i + 1]
                c = a_t[3 * i + 2]
                la = rk[a] < rv
                lb = rk[b] < rv
                lc = rk[c] < rv
                if la and lb and lc:
                    t_lo += 1
                elif not (la or lb or lc):
                    t_hi += 1
            out[v, 0] = n_lo
            out[v, 1] = comps_lo
            out[v, 2] = n_lo - e_lo + t_lo
            out[v, 3] = n_hi
            out[v, 4] = comps_hi
            out[v, 5] = n_hi - e_hi + t_hi
    return out_np


def edge_link_signs(cyc_ptr, cyc, tail, head, f1, f2):
    cdef const long[::1] ptr = np.ascontiguousarray(cyc_ptr, dtype=np.int64)
    cdef const long[::1] cy = np.ascontiguousarray(cyc, dtype=np.int64)
    cdef const long[::1] ta = np.ascontiguousarray(tail, dtype=np.int64)
    cdef const long[::1] he = np.ascontiguousarray(head, dtype=np.int64)
    cdef const double[::1] x = np.ascontiguousarray(f1, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(f2, dtype=np.float64)
    out_np = np.zeros(cy.shape[0], dtype=np.int8)
    cdef signed char[::1] out = out_np
    cdef long e, i, a, b, w
    with nogil:
        for e in range(ptr.shape[0] - 1):
            a = ta[e]
            b = he[e]
            for i in range(ptr[e], ptr[e + 1]):
                w = cy[i]
                out[i] = <signed char>_orient(x[a], y[a], x[b], y[b], x[w], y[w])
    return out_np


def triangles_containing(tris, f1, f2, double r1, double r2):
    cdef const long[:, ::1] t = np.ascontiguousarray(tris, dtype=np.int64).reshape(-1, 3)
    cdef const double[::1] x = np.ascontiguousarray(f1, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(f2, dtype=np.float64)
    out_np = np.zeros(t.shape[0], dtype=np.int8)
    cdef signed char[::1] out = out_np
    cdef long k, a, b, c
    cdef int o, s1, s2, s3
    with nogil:
        for k in range(t.shape[0]):
            a = t[k, 0]
            b = t[k, 1]
            c = t[k, 2]
            o = _orient(x[a], y[a], x[b], y[b], x[c], y[c])
            if o == 0:
                out[k] = 2
                continue
            s1 = _orient(x[a], y[a], x[b], y[b], r1, r2)
            s2 = _orient(x[b], y[b], x[c], y[c], r1, r2)
            s3 = _orient(x[c], y[c], x[a], y[a], r1, r2)
            if s1 == -o or s2 == -o or s3 == -o:
                out[k] = 0
            elif s1 == 0 or s2 == 0 or s3 == 0:
                out[k] = 2
            else:
                out[k] = 1
    return out_np


def bbox_overlap_pairs(x_lo, x_hi, y_lo, y_hi):
    cdef const double[::1] xl = np.ascontiguousarray(x_lo, dtype=np.float64)
    cdef const double[::1] xh = np.ascontiguousarray(x_hi, dtype=np.float64)
    cdef const double[::1] yl = np.ascontiguousarray(y_lo, dtype=np.float64)
    cdef const double[::1] yh = np.ascontiguousarray(y_hi, dtype=np.float64)
    cdef long n = xl.shape[0]
    cdef const long[::1] order = np.lexsort((np.arange(n), np.asarray(xl))).astype(np.int64)
    cdef long[::1] active = np.empty(max(n, 1), dtype=np.int64)
    cdef long n_active = 0, k, m, i, j, keep
    pairs = []
    for k in range(n):
        i = order[k]
        keep = 0
        for m in range(n_active):
            j = active[m]
            if xh[j] >= xl[i]:
                active[keep] = j
                keep += 1
                if yl[j] <= yh[i] and yl[i] <= yh[j]:
                    pairs.append((j, i) if j < i else (i, j))
        n_active = keep
        active[n_active] = i
        n_active += 1
    pairs.sort()
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)
