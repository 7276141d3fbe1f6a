"""Pure-Python implementations of the hot per-simplex sweeps.

These mirror ``_kernels.pyx`` one-for-one and are used when the compiled
extension is unavailable (or disabled with ``REEBSPACE_PURE_PYTHON=1``).
Every routine takes flat integer/float arrays in CSR layout so the two
backends share a signature.

Sign conventions: an orientation test that the float filter cannot certify
is reported as *uncertain* and recomputed exactly by the caller.
"""
from __future__ import annotations

import numpy as np

_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


def _orient(ax, ay, bx, by, cx, cy):
    left = (ax - cx) * (by - cy)
    right = (ay - cy) * (bx - cx)
    det = left - right
    bound = _ERRBOUND * (abs(left) + abs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return 0  # uncertain


def vertex_link_stats(lv_ptr, lv, le_ptr, le, lt_ptr, lt, rank):
    """Lower/upper link statistics for every vertex.

    Returns an ``(n_v, 6)`` int array with columns
    ``(n_lower, comps_lower, chi_lower, n_upper, comps_upper, chi_upper)``.
    ``le`` holds link edges as flat vertex pairs, ``lt`` link triangles as
    flat triples, both in global vertex ids.
    """
    n = len(lv_ptr) - 1
    out = np.zeros((n, 6), dtype=np.int64)
    rank = [int(r) for r in rank]
    lv = lv.tolist() if hasattr(lv, "tolist") else list(lv)
    le = le.tolist() if hasattr(le, "tolist") else list(le)
    lt = lt.tolist() if hasattr(lt, "tolist") else list(lt)
    for v in range(n):
        rv = rank[v]
        verts = lv[lv_ptr[v]:lv_ptr[v + 1]]
        parent = {w: w for w in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n_lo = sum(1 for w in verts if rank[w] < rv)
        n_hi = len(verts) - n_lo
        comps_lo, comps_hi = n_lo, n_hi
        e_lo = e_hi = 0
        for i in range(le_ptr[v], le_ptr[v + 1]):
            a, b = le[2 * i], le[2 * i + 1]
            la, lb = rank[a] < rv, rank[b] < rv
            if la != lb:
                continue
            if la:
                e_lo += 1
            else:
                e_hi += 1
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                if la:
                    comps_lo -= 1
                else:
                    comps_hi -= 1
        t_lo = t_hi = 0
        for i in range(lt_ptr[v], lt_ptr[v + 1]):
            a, b, c = lt[3 * i], lt[3 * i + 1], lt[3 * i + 2]
            la, lb, lc = rank[a] < rv, rank[b] < rv, rank[c] < rv
            if la and lb and lc:
                t_lo += 1
            elif not (la or lb or lc):
                t_hi += 1
        out[v] = (n_lo, comps_lo, n_lo - e_lo + t_lo, n_hi, comps_hi, n_hi - e_hi + t_hi)
    return out


def edge_link_signs(cyc_ptr, cyc, tail, head, f1, f2):
    """Orientation of each link vertex against its edge's range segment.

    For edge ``i`` the segment runs from ``f(tail[i])`` to ``f(head[i])``.
    Returns an int8 array aligned with ``cyc``: +1 left (above for h_u),
    -1 right, 0 when the float filter is inconclusive.
    """
    out = np.zeros(len(cyc), dtype=np.int8)
    f1 = f1.tolist() if hasattr(f1, "tolist") else list(f1)
    f2 = f2.tolist() if hasattr(f2, "tolist") else list(f2)
    cyc = cyc.tolist() if hasattr(cyc, "tolist") else list(cyc)
    for e in range(len(cyc_ptr) - 1):
        a, b = int(tail[e]), int(head[e])
        ax, ay, bx, by = f1[a], f2[a], f1[b], f2[b]
        for i in range(cyc_ptr[e], cyc_ptr[e + 1]):
            w = cyc[i]
            out[i] = _orient(ax, ay, bx, by, f1[w], f2[w])
    return out


def triangles_containing(tris, f1, f2, r1, r2):
    """Classify the range point ``(r1, r2)`` against every triangle image.

    Returns an int8 array: 1 strictly inside, 0 outside, 2 when the float
    filter cannot decide (boundary or near-boundary).
    """
    n = len(tris)
    out = np.zeros(n, dtype=np.int8)
    f1 = f1.tolist() if hasattr(f1, "tolist") else list(f1)
    f2 = f2.tolist() if hasattr(f2, "tolist") else list(f2)
    flat = tris.reshape(-1).tolist()
    for k in range(n):
        a, b, c = flat[3 * k], flat[3 * k + 1], flat[3 * k + 2]
        o = _orient(f1[a], f2[a], f1[b], f2[b], f1[c], f2[c])
        if o == 0:
            out[k] = 2
            continue
        s1 = _orient(f1[a], f2[a], f1[b], f2[b], r1, r2)
        s2 = _orient(f1[b], f2[b], f1[c], f2[c], r1, r2)
        s3 = _orient(f1[c], f2[c], f1[a], f2[a], r1, r2)
        if s1 == -o or s2 == -o or s3 == -o:
            out[k] = 0
        elif s1 == 0 or s2 == 0 or s3 == 0:
            out[k] = 2
        else:
            out[k] = 1
    return out


def bbox_overlap_pairs(x_lo, x_hi, y_lo, y_hi):
    """All index pairs ``i < j`` whose closed bounding boxes overlap.

    Sweeps along x; returns an ``(m, 2)`` int array sorted lexicographically.
    """
    n = len(x_lo)
    order = sorted(range(n), key=lambda i: (x_lo[i], i))
    active = []
    pairs = []
    for i in order:
        xl = x_lo[i]
        active = [j for j in active if x_hi[j] >= xl]
        for j in active:
            if y_lo[j] <= y_hi[i] and y_lo[i] <= y_hi[j]:
                pairs.append((j, i) if j < i else (i, j))
        active.append(i)
    pairs.sort()
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)
