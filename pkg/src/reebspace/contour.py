"""Contour surfaces of f1 and the restricted field f2 on them.

A contour is extracted by marching tetrahedra at a :class:`Level` of f1.
Each surface vertex sits on one crossed mesh edge, and its parameter along
that edge and its f2 value are exact rationals.  The surface therefore
carries an exact restriction of f2, which is what makes its critical points
coincide with the Jacobi edges it crosses.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .mesh import GenericityError, LinkComplex, TetField, _component_count
from .reebgraph import Criticality, Level, ReducedBetti, _SweepDomain, _groups, \
    criticality_from_betti, level_at


def mesh_fractions(mesh: TetField):
    """``(f1, f2)`` of ``mesh`` as lists of exact fractions (cached)."""
    cached = mesh._cache.get("fractions")
    if cached is None:
        cached = ([Fraction(x) for x in mesh.f1.tolist()],
                  [Fraction(x) for x in mesh.f2.tolist()])
        mesh._cache["fractions"] = cached
    return cached


def sorted_f1(mesh: TetField):
    cached = mesh._cache.get("sorted_f1")
    if cached is None:
        cached = mesh.f1[mesh.order("f1")].tolist()
        mesh._cache["sorted_f1"] = cached
    return cached


def as_level(mesh: TetField, level) -> Level:
    if isinstance(level, Level):
        return level
    return level_at(sorted_f1(mesh), level)


def edge_parameter(mesh: TetField, e: int, y) -> Fraction:
    """Exact parameter along edge ``e`` (low id to high id) where f1 = y."""
    f1, _ = mesh_fractions(mesh)
    a, b = mesh.edges[e].tolist()
    d = f1[b] - f1[a]
    if d == 0:
        raise GenericityError(f"edge {e} has a flat f1 image", witness=e)
    return (Fraction(y) - f1[a]) / d


def edge_point(mesh: TetField, e: int, t: Fraction) -> Tuple[Fraction, Fraction]:
    """Exact range image of the point at parameter ``t`` along edge ``e``."""
    f1, f2 = mesh_fractions(mesh)
    a, b = mesh.edges[e].tolist()
    return (f1[a] + t * (f1[b] - f1[a]), f2[a] + t * (f2[b] - f2[a]))


class SurfaceMesh:
    """One contour component with the restricted field f2.

    Attributes
    ----------
    f2 : list of Fraction
    edge : list of int
        Provenance mesh edge of every vertex.
    t : list of Fraction
        Parameter along the provenance edge, from its lower-id endpoint.
    triangles : ndarray, shape (n_t, 3)
    on_jacobi_edge : list of bool
    level : Level
        The f1 level the contour was extracted at.
    """

    def __init__(self, f2, edge, t, triangles, on_jacobi_edge=None, level=None):
        self.f2 = list(f2)
        self.edge = [int(e) for e in edge]
        self.t = list(t)
        self.triangles = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        n = len(self.f2)
        self.on_jacobi_edge = list(on_jacobi_edge) if on_jacobi_edge is not None \
            else [False] * n
        self.level = level
        self.vertex_of_edge = {e: i for i, e in enumerate(self.edge)}
        edge_index: Dict[Tuple[int, int], int] = {}
        thirds: List[List[int]] = []
        nbrs: List[set] = [set() for _ in range(n)]
        link_edges: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for tri in self.triangles.tolist():
            for i in range(3):
                a, b, c = tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]
                key = (a, b) if a < b else (b, a)
                k = edge_index.get(key)
                if k is None:
                    k = edge_index[key] = len(thirds)
                    thirds.append([])
                thirds[k].append(c)
                nbrs[a].add(b)
                nbrs[b].add(a)
                link_edges[c].append(key)
        self.edge_index = edge_index
        self.edges = list(edge_index)
        self.thirds = thirds
        self.nbrs = [sorted(s) for s in nbrs]
        self.link_edges = link_edges
        order = sorted(range(n), key=lambda i: (self.f2[i], i))
        rank = [0] * n
        for r, i in enumerate(order):
            rank[i] = r
        self._order = order
        self._rank = rank

    # -- sizes and topology --------------------------------------------------
    @property
    def n_v(self) -> int:
        return len(self.f2)

    @property
    def n_e(self) -> int:
        return len(self.edges)

    @property
    def n_t(self) -> int:
        return len(self.triangles)

    def euler_characteristic(self) -> int:
        return self.n_v - self.n_e + self.n_t

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    def is_closed_manifold(self) -> bool:
        if any(len(t) != 2 for t in self.thirds):
            return False
        for v in range(self.n_v):
            if _component_count(self.nbrs[v], self.link_edges[v]) != 1:
                return False
        return True

    # -- field access ----------------------------------------------------------
    def values(self, fld="f2"):
        return self.f2

    def rank(self, fld="f2"):
        return self._rank

    def order(self, fld="f2"):
        return self._order

    def link(self, v: int) -> LinkComplex:
        edges = tuple(sorted(set(self.link_edges[v])))
        return LinkComplex(tuple(self.nbrs[v]), edges, (), True, "circle")

    def classify(self, v: int) -> Criticality:
        rank = self._rank
        rv = rank[v]
        lower = [w for w in self.nbrs[v] if rank[w] < rv]
        if not lower:
            b = ReducedBetti(1, 0, 0, 0)
        elif len(lower) == len(self.nbrs[v]):
            b = ReducedBetti(0, 0, 1, 0)
        else:
            low_edges = [(a, c) for a, c in self.link_edges[v] if rank[a] < rv and rank[c] < rv]
            b = ReducedBetti(0, _component_count(lower, low_edges) - 1, 0, 0)
        return criticality_from_betti(b, 2)

    def critical_vertices(self) -> List[int]:
        return [v for v in range(self.n_v) if self.classify(v).critical]

    def sweep_domain(self) -> _SweepDomain:
        rank = self._rank
        crits = [self.classify(v) for v in range(self.n_v)]

        def upper_groups(v):
            rv = rank[v]
            upper = [w for w in self.nbrs[v] if rank[w] > rv]
            if not crits[v].critical:
                return [upper]
            return _groups(upper, self.link_edges[v], rank, rv)

        return _SweepDomain(self.n_v, self.f2, rank, self._order, self.edges,
                            self.edge_index, self.thirds, self.nbrs, crits,
                            upper_groups)


def _crossing_triangles(mesh: TetField, cut: int):
    """Marching-tets triangles as triples of crossed mesh edge ids."""
    r = mesh.rank("f1")
    tr = r[mesh.tets]
    hit = np.nonzero((tr.min(axis=1) < cut) & (tr.max(axis=1) >= cut))[0]
    out = []
    eid = mesh.edge_id
    for ti in hit.tolist():
        verts = sorted(mesh.tets[ti].tolist(), key=lambda w: r[w])
        below = [w for w in verts if r[w] < cut]
        above = [w for w in verts if r[w] >= cut]
        if len(below) == 1:
            p = below[0]
            out.append(tuple(eid(p, q) for q in above))
        elif len(below) == 3:
            q = above[0]
            out.append(tuple(eid(p, q) for p in below))
        else:
            p, q = below
            s, u = above
            ps, pu, qu, qs = eid(p, s), eid(p, u), eid(q, u), eid(q, s)
            out.append((ps, pu, qu))
            out.append((ps, qu, qs))
    return out


def extract_contour(mesh: TetField, level, jacobi=None) -> List[SurfaceMesh]:
    """All contour components of f1 at ``level``.

    Parameters
    ----------
    mesh : TetField
    level : Level or float
        A float must not equal any vertex value of f1.
    jacobi : optional
        Anything with an ``edges`` container of mesh edge ids; contour
        vertices on those edges get ``on_jacobi_edge`` set.

    Returns
    -------
    list of SurfaceMesh
        Sorted by the smallest provenance edge id of each component.
    """
    if not isinstance(level, Level):
        sv = sorted_f1(mesh)
        if level < sv[0] or level > sv[-1]:
            return []
    lvl = as_level(mesh, level)
    if lvl.cut <= 0 or lvl.cut >= mesh.n_v:
        return []
    tris = _crossing_triangles(mesh, lvl.cut)
    parent: Dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tri in tris:
        for e in tri:
            parent.setdefault(e, e)
        ra = find(tri[0])
        for e in tri[1:]:
            rb = find(e)
            if rb != ra:
                parent[rb] = ra
    groups: Dict[int, List[Tuple[int, int, int]]] = {}
    for tri in tris:
        groups.setdefault(find(tri[0]), []).append(tri)
    jset = set(jacobi.edges) if jacobi is not None else set()
    out = [_build_surface(mesh, lvl, g, jset) for g in groups.values()]
    out.sort(key=lambda s: s.edge[0])
    return out


def extract_contour_component(mesh: TetField, level, edge: int, jacobi=None) -> SurfaceMesh:
    """The contour component at ``level`` through crossed mesh edge ``edge``."""
    for s in extract_contour(mesh, level, jacobi):
        if edge in s.vertex_of_edge:
            return s
    raise ValueError(f"edge {edge} does not cross the level")


def _build_surface(mesh, lvl, tris, jset) -> SurfaceMesh:
    f1, f2 = mesh_fractions(mesh)
    y = Fraction(lvl.value)
    edges = sorted({e for t in tris for e in t})
    idx = {e: i for i, e in enumerate(edges)}
    vals, params = [], []
    for e in edges:
        a, b = mesh.edges[e].tolist()
        d = f1[b] - f1[a]
        if d == 0:
            raise GenericityError(f"edge {e} has a flat f1 image", witness=e)
        t = (y - f1[a]) / d
        params.append(t)
        vals.append(f2[a] + t * (f2[b] - f2[a]))
    tri_arr = [[idx[e] for e in t] for t in tris]
    return SurfaceMesh(vals, edges, params, tri_arr, [e in jset for e in edges], lvl)


def tetrahedron_surface(f2: Sequence) -> SurfaceMesh:
    """The boundary of a tetrahedron as a standalone surface (for tests)."""
    tris = list(itertools.combinations(range(4), 3))
    return SurfaceMesh([Fraction(x) for x in f2], range(4), [Fraction(1, 2)] * 4, tris)
