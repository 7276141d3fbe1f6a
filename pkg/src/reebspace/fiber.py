"""Brute-force fibers.

Inside a tetrahedron f is affine, so the preimage of a regular range point
is empty or one segment whose ends lie on two faces.  A face is hit when
its range triangle contains the point; the hits are computed with the
float filter of the kernel and confirmed exactly when it is unsure.
Segments are then stitched through shared faces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from . import kernels
from .contour import mesh_fractions
from .jacobi import JacobiSet
from .mesh import GenericityError, TetField
from .predicates import orient2d, point_in_triangle


class OracleError(RuntimeError):
    """The stitched fiber is not a closed 1-manifold."""


@dataclass
class FiberPolyline:
    """Segments of a fiber and their component labels.

    ``segments[i] = (tet, (tri, bary), (tri, bary))`` where ``bary`` are
    the exact barycentric coordinates of the end on that triangle.
    """

    value: Tuple[Fraction, Fraction]
    segments: List[Tuple[int, Tuple[int, tuple], Tuple[int, tuple]]] = field(default_factory=list)
    components: List[int] = field(default_factory=list)

    def n_components(self) -> int:
        return len(set(self.components))


def _barycentric(pa, pb, pc, r) -> Tuple[Fraction, Fraction, Fraction]:
    (ax, ay), (bx, by), (cx, cy) = pa, pb, pc
    det = (bx - ax) * (cy - ay) - (cx - ax) * (by - ay)
    l1 = ((r[0] - ax) * (cy - ay) - (cx - ax) * (r[1] - ay)) / det
    l2 = ((bx - ax) * (r[1] - ay) - (r[0] - ax) * (by - ay)) / det
    return (1 - l1 - l2, l1, l2)


def hit_triangles(mesh: TetField, r) -> List[int]:
    """Ids of triangles whose range image strictly contains ``r``.

    Raises GenericityError when ``r`` sits on the boundary of an image.
    """
    rr = (Fraction(r[0]), Fraction(r[1]))
    x, y = float(rr[0]), float(rr[1])
    if (Fraction(x), Fraction(y)) == rr:
        flags = kernels.triangles_containing(mesh.triangles, mesh.f1, mesh.f2, x, y)
        hits = np.nonzero(flags == 1)[0].tolist()
        check = np.nonzero(flags == 2)[0].tolist()
    else:
        # not representable in floating point: decide everything exactly
        hits, check = [], range(len(mesh.triangles))
    if not len(check):
        return hits
    f1, f2 = mesh_fractions(mesh)
    for t in check:
        a, b, c = mesh.triangles[t].tolist()
        pa, pb, pc = (f1[a], f2[a]), (f1[b], f2[b]), (f1[c], f2[c])
        if orient2d(pa, pb, pc) == 0:
            # a flat image has no interior; r on it means r is on an edge image
            if orient2d(pa, pb, rr) == 0 and min(pa, pb, pc) <= rr <= max(pa, pb, pc):
                raise GenericityError(
                    f"range point {rr} lies on the flat image of triangle {t}", witness=t)
            continue
        inside = point_in_triangle(pa, pb, pc, rr)
        if inside is None:
            raise GenericityError(
                f"range point {rr} lies on the boundary image of triangle {t}", witness=t)
        if inside:
            hits.append(t)
    return sorted(hits)


def extract_fiber(mesh: TetField, r) -> FiberPolyline:
    """Fiber of ``f`` over ``r = (r1, r2)`` with component labels.

    Raises
    ------
    GenericityError
        If ``r`` lies on the image of a mesh edge or vertex.
    OracleError
        If a tetrahedron has other than 0 or 2 hit faces.
    """
    rr = (Fraction(r[0]), Fraction(r[1]))
    fp = FiberPolyline(rr)
    hits = hit_triangles(mesh, rr)
    if not hits:
        return fp
    f1, f2 = mesh_fractions(mesh)
    hit_set = set(hits)
    per_tet: Dict[int, List[int]] = {}
    for t in hits:
        for T in mesh.triangle_tets[t]:
            per_tet.setdefault(int(T), []).append(t)
    parent = {t: t for t in hits}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for T in sorted(per_tet):
        faces = per_tet[T]
        if len(faces) != 2:
            raise OracleError(f"tet {T} meets the fiber in {len(faces)} faces")
        ends = []
        for t in faces:
            a, b, c = mesh.triangles[t].tolist()
            bary = _barycentric((f1[a], f2[a]), (f1[b], f2[b]), (f1[c], f2[c]), rr)
            ends.append((t, bary))
        fp.segments.append((T, ends[0], ends[1]))
        ra, rb = find(faces[0]), find(faces[1])
        if ra != rb:
            parent[ra] = rb
    for t in hits:
        if len(mesh.triangle_tets[t]) != 2 or not all(int(T) in per_tet for T in mesh.triangle_tets[t]):
            raise OracleError(f"fiber end on triangle {t} is not shared by two segments")
    roots = sorted({find(t) for t in hit_set})
    label = {x: i for i, x in enumerate(roots)}
    fp.components = [label[find(seg[1][0])] for seg in fp.segments]
    return fp


def count_fiber_components(fp: FiberPolyline) -> int:
    """Connected components of a stitched fiber (union-find over faces)."""
    if not fp.segments:
        return 0
    parent: Dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    degree: Dict[int, int] = {}
    for _, (ta, _), (tb, _) in fp.segments:
        for t in (ta, tb):
            parent.setdefault(t, t)
            degree[t] = degree.get(t, 0) + 1
        ra, rb = find(ta), find(tb)
        if ra != rb:
            parent[ra] = rb
    if any(d != 2 for d in degree.values()):
        raise OracleError("fiber has an open end")
    return len({find(t) for t in parent})


def fiber_components(mesh: TetField, r) -> int:
    return count_fiber_components(extract_fiber(mesh, r))


def is_regular_value(mesh: TetField, js: JacobiSet, r) -> bool:
    """False when ``r`` is a vertex image or lies on a Jacobi edge image."""
    rr = (Fraction(r[0]), Fraction(r[1]))
    f1, f2 = mesh_fractions(mesh)
    x = float(rr[0])
    y = float(rr[1])
    ends = mesh.edges[js.edges] if js.edges else np.zeros((0, 2), dtype=np.int64)
    for a, b in ends.tolist():
        if not (min(mesh.f1[a], mesh.f1[b]) <= x <= max(mesh.f1[a], mesh.f1[b])
                and min(mesh.f2[a], mesh.f2[b]) <= y <= max(mesh.f2[a], mesh.f2[b])):
            continue
        pa, pb = (f1[a], f2[a]), (f1[b], f2[b])
        if orient2d(pa, pb, rr) == 0 and min(pa, pb) <= rr <= max(pa, pb):
            return False
    hit = np.nonzero((mesh.f1 == x) & (mesh.f2 == y))[0]
    for v in hit.tolist():
        if (f1[v], f2[v]) == rr:
            return False
    return True


def range_box(mesh: TetField) -> Tuple[float, float, float, float]:
    return (float(mesh.f1.min()), float(mesh.f1.max()),
            float(mesh.f2.min()), float(mesh.f2.max()))


def sample_regular_values(mesh: TetField, js: JacobiSet, n: int, seed: int = 0,
                          avoid=None) -> List[Tuple[float, float]]:
    """``n`` regular values drawn uniformly from the range bounding box.

    ``avoid`` is an optional predicate; samples for which it returns True
    are redrawn as well (used to skip values of f1 graph nodes).
    """
    rng = np.random.default_rng(seed)
    x0, x1, y0, y1 = range_box(mesh)
    out = []
    while len(out) < n:
        r = (float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if not is_regular_value(mesh, js, r):
            continue
        if avoid is not None and avoid(r):
            continue
        out.append(r)
    return out
