"""Projection of the Jacobi set into the Reeb space.

Two Jacobi edges whose range images cross at ``a`` produce a double point
when their preimages of ``a`` lie on one fiber-component.  That is decided
in two steps: both points must sit on the same contour of f1 at level
``a1`` (one arc of the Reeb graph of f1), and the two critical points they
define on that contour must be joined by an arc of the Reeb graph of the
restricted f2.  Everything is evaluated at the exact level ``a1``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import kernels
from .contour import extract_contour_component, mesh_fractions, sorted_f1
from .jacobi import JacobiSet
from .mesh import GenericityError, TetField
from .predicates import SegmentIntersection, segment_intersection
from .reebgraph import Level, ReebGraph, ReebPoint


def range_segment_intersection(s1, s2) -> SegmentIntersection:
    """Exact intersection of two range segments ``((x, y), (x, y))``.

    Raises :class:`~reebspace.predicates.DegenerateSegment` if either
    segment has coincident endpoints.
    """
    return segment_intersection(s1[0], s1[1], s2[0], s2[1])


@dataclass(frozen=True)
class CrossingRecord:
    """A double point of the Jacobi structure and its witnesses.

    ``x`` and ``y`` are ``(edge id, parameter)`` on ``edges[0]`` and
    ``edges[1]``; the parameter runs from the lower-id endpoint.
    """

    edges: Tuple[int, int]
    point: Tuple[Fraction, Fraction]
    reeb_point: ReebPoint
    x: Tuple[int, Fraction]
    y: Tuple[int, Fraction]
    same_component: bool = False


@dataclass(frozen=True)
class CrossingTest:
    """Why a properly crossing pair was or was not a double point."""

    edges: Tuple[int, int]
    outcome: str  # "double-point" | "different-f1-contour" | "different-f2-contour" | "degenerate"
    record: Optional[CrossingRecord] = None


@dataclass
class JSVertex:
    id: int
    point: Tuple[Fraction, Fraction]
    kind: str  # "projected-jacobi-vertex" | "double-point"
    preimage: object


@dataclass
class JSEdge:
    id: int
    u: int
    v: int
    source: int
    t0: Fraction
    t1: Fraction


@dataclass
class JacobiStructure:
    """Vertices, subdivided edges and crossing records."""

    vertices: List[JSVertex] = field(default_factory=list)
    edges: List[JSEdge] = field(default_factory=list)
    crossings: List[CrossingRecord] = field(default_factory=list)
    tests: List[CrossingTest] = field(default_factory=list)
    vertex_of: Dict[int, int] = field(default_factory=dict)
    fragments: Dict[int, List[int]] = field(default_factory=dict)

    def degree(self, i: int) -> int:
        return sum((e.u == i) + (e.v == i) for e in self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def double_point_ids(self) -> List[int]:
        return [v.id for v in self.vertices if v.kind == "double-point"]

    def fragment_at(self, e: int, t: Fraction) -> int:
        """Id of the structure edge carrying parameter ``t`` of Jacobi edge ``e``."""
        for fid in self.fragments[e]:
            f = self.edges[fid]
            lo, hi = min(f.t0, f.t1), max(f.t0, f.t1)
            if lo <= t <= hi:
                return fid
        raise ValueError(f"parameter {t} is outside jacobi edge {e}")


def _image(mesh: TetField, e: int):
    # float endpoints keep the orientation filter fast; the predicates and
    # the intersection point are exact regardless
    a, b = mesh.edges[e].tolist()
    return mesh.image(a), mesh.image(b)


def resolve_crossing(mesh: TetField, e: int, e2: int, rg1: ReebGraph,
                     hit: Optional[SegmentIntersection] = None, js=None) -> CrossingTest:
    """Decide whether the proper range crossing of ``e`` and ``e2`` is a
    double point."""
    if hit is None:
        hit = range_segment_intersection(_image(mesh, e), _image(mesh, e2))
    if not hit:
        return CrossingTest((e, e2), "degenerate")
    a1, a2 = hit.point
    sv = sorted_f1(mesh)
    lo = bisect.bisect_left(sv, a1)
    if lo != bisect.bisect_right(sv, a1):
        return CrossingTest((e, e2), "degenerate")
    lvl = Level(lo, a1)
    p = rg1.locate_edge(e, lvl)
    q = rg1.locate_edge(e2, lvl)
    if p != q:
        return CrossingTest((e, e2), "different-f1-contour")
    contour = extract_contour_component(mesh, lvl, e, js)
    if e2 not in contour.vertex_of_edge:
        return CrossingTest((e, e2), "different-f1-contour")
    rg2 = ReebGraph.from_surface(contour)
    nx = rg2.vertex_node.get(contour.vertex_of_edge[e])
    ny = rg2.vertex_node.get(contour.vertex_of_edge[e2])
    if nx is None or ny is None:
        raise GenericityError(
            f"jacobi edges {e}, {e2} are not critical on their contour", witness=(e, e2))
    joined = any({arc.lo, arc.hi} == {nx, ny} for arc in rg2.arcs)
    if not joined:
        return CrossingTest((e, e2), "different-f2-contour")
    same = False
    if js is not None:
        same = _same_jacobi_component(js, e, e2)
    rec = CrossingRecord((e, e2), (a1, a2), p, (e, hit.s), (e2, hit.t), same)
    return CrossingTest((e, e2), "double-point", rec)


def _same_jacobi_component(js: JacobiSet, e: int, e2: int) -> bool:
    m = js.mesh
    start = m.edges[e].tolist()[0]
    target = set(m.edges[e2].tolist())
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        if x in target:
            return True
        for w in js.neighbors(x):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def candidate_pairs(mesh: TetField, js: JacobiSet) -> np.ndarray:
    """Pairs of Jacobi edge indices (into ``js.edges``) with overlapping boxes."""
    if not js.edges:
        return np.zeros((0, 2), dtype=np.int64)
    ends = mesh.edges[js.edges]
    x = mesh.f1[ends]
    y = mesh.f2[ends]
    return kernels.bbox_overlap_pairs(x.min(1), x.max(1), y.min(1), y.max(1))


def compute_jacobi_structure(mesh: TetField, js: JacobiSet, rg1: ReebGraph) -> JacobiStructure:
    """Project the Jacobi set and resolve every proper range crossing."""
    f1, f2 = mesh_fractions(mesh)
    out = JacobiStructure()
    for v in js.vertices:
        out.vertex_of[v] = len(out.vertices)
        out.vertices.append(JSVertex(len(out.vertices), (f1[v], f2[v]),
                                     "projected-jacobi-vertex", v))
    images = {e: _image(mesh, e) for e in js.edges}
    cuts: Dict[int, List[Tuple[Fraction, int]]] = {e: [] for e in js.edges}
    for i, j in candidate_pairs(mesh, js).tolist():
        e, e2 = js.edges[i], js.edges[j]
        hit = range_segment_intersection(images[e], images[e2])
        if not hit:
            continue
        test = resolve_crossing(mesh, e, e2, rg1, hit, js)
        out.tests.append(test)
        if test.record is None:
            continue
        rec = test.record
        vid = len(out.vertices)
        out.vertices.append(JSVertex(vid, rec.point, "double-point", rec))
        out.crossings.append(rec)
        cuts[e].append((hit.s, vid))
        cuts[e2].append((hit.t, vid))
    for e in js.edges:
        a, b = mesh.edges[e].tolist()
        chain = [(Fraction(0), out.vertex_of[a])] + sorted(cuts[e]) + [(Fraction(1), out.vertex_of[b])]
        frag = []
        for (t0, u), (t1, w) in zip(chain, chain[1:]):
            fid = len(out.edges)
            out.edges.append(JSEdge(fid, u, w, e, t0, t1))
            frag.append(fid)
        out.fragments[e] = frag
    return out


def double_points(jstruct: JacobiStructure) -> List[Tuple[int, Fraction]]:
    """One mesh witness ``(edge, parameter)`` per degree-4 vertex."""
    deg = jstruct.degrees()
    out = []
    for v in jstruct.vertices:
        if v.kind == "double-point" and deg[v.id] == 4:
            out.append(v.preimage.x)
    return out
