"""Combinatorial tetrahedral mesh kernel.

The mesh is immutable once built.  All adjacency is derived in the
constructor, so every query below is a pure read and may be issued from
several threads at once.

Field comparisons always go through the perturbed total order: vertex ``u``
is below ``v`` for a field when ``(value[u], u) < (value[v], v)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple, Union

import numpy as np


class MeshStructureError(ValueError):
    """Malformed mesh input (bad indices, degenerate or duplicate cells)."""


class GenericityError(ValueError):
    """Input violates a genericity assumption that perturbation cannot fix."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


FIELDS = ("f1", "f2")


def _field_index(fld) -> int:
    if fld in (0, "f1"):
        return 0
    if fld in (1, "f2"):
        return 1
    raise ValueError(f"unknown field selector {fld!r}")


class TetField:
    """Tetrahedral 3-manifold with a bivariate field on its vertices.

    Parameters
    ----------
    positions : array_like, shape (n_v, 3)
    f1, f2 : array_like, shape (n_v,)
    tets : array_like of int, shape (n_T, 4)
    """

    def __init__(self, positions, f1, f2, tets):
        self.positions = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
        self.f1 = np.asarray(f1, dtype=np.float64).reshape(-1)
        self.f2 = np.asarray(f2, dtype=np.float64).reshape(-1)
        self.tets = np.asarray(tets, dtype=np.int64).reshape(-1, 4)
        n_v = len(self.positions)
        if len(self.f1) != n_v or len(self.f2) != n_v:
            raise MeshStructureError("field arrays do not match vertex count")
        if not (np.all(np.isfinite(self.f1)) and np.all(np.isfinite(self.f2))):
            raise MeshStructureError("field values must be finite")
        if len(self.tets) and (self.tets.min() < 0 or self.tets.max() >= n_v):
            bad = int(np.argmax((self.tets < 0).any(1) | (self.tets >= n_v).any(1)))
            raise MeshStructureError(f"tet {bad} references a vertex out of range")
        seen = set()
        for i, t in enumerate(self.tets.tolist()):
            key = tuple(sorted(t))
            if len(set(key)) != 4:
                raise MeshStructureError(f"tet {i} repeats a vertex")
            if key in seen:
                raise MeshStructureError(f"tet {i} duplicates an earlier tet")
            seen.add(key)
        for arr in (self.positions, self.f1, self.f2, self.tets):
            arr.setflags(write=False)
        self._build()

    # -- derived adjacency -------------------------------------------------
    def _build(self):
        n_v = self.n_v
        edge_index: Dict[Tuple[int, int], int] = {}
        tri_index: Dict[Tuple[int, int, int], int] = {}
        tet_edges = []
        tet_tris = []
        tri_tets: List[List[int]] = []
        edge_tets: List[List[int]] = []
        vertex_tets: List[List[int]] = [[] for _ in range(n_v)]
        for ti, t in enumerate(self.tets.tolist()):
            t = sorted(t)
            te = []
            for a, b in itertools.combinations(t, 2):
                e = edge_index.get((a, b))
                if e is None:
                    e = edge_index[(a, b)] = len(edge_index)
                    edge_tets.append([])
                edge_tets[e].append(ti)
                te.append(e)
            tt = []
            for a, b, c in itertools.combinations(t, 3):
                k = tri_index.get((a, b, c))
                if k is None:
                    k = tri_index[(a, b, c)] = len(tri_index)
                    tri_tets.append([])
                tri_tets[k].append(ti)
                tt.append(k)
            for v in t:
                vertex_tets[v].append(ti)
            tet_edges.append(te)
            tet_tris.append(tt)
        self.edge_index = edge_index
        self.tri_index = tri_index
        self.edges = np.array(list(edge_index), dtype=np.int64).reshape(-1, 2)
        self.triangles = np.array(list(tri_index), dtype=np.int64).reshape(-1, 3)
        self.tet_edges = np.array(tet_edges, dtype=np.int64).reshape(-1, 6)
        self.tet_triangles = np.array(tet_tris, dtype=np.int64).reshape(-1, 4)
        self.triangle_tets = tri_tets
        self.edge_tets = edge_tets
        self.vertex_tets = vertex_tets
        vertex_edges: List[List[int]] = [[] for _ in range(n_v)]
        for e, (a, b) in enumerate(self.edges.tolist()):
            vertex_edges[a].append(e)
            vertex_edges[b].append(e)
        self.vertex_edges = vertex_edges
        ranks = []
        for vals in (self.f1, self.f2):
            order = np.lexsort((np.arange(n_v), vals))
            r = np.empty(n_v, dtype=np.int64)
            r[order] = np.arange(n_v)
            r.setflags(write=False)
            order.setflags(write=False)
            ranks.append((order, r))
        self._orders = ranks
        self._edge_cycles: Dict[int, Tuple[int, ...]] = {}
        # lazily filled, derived-only data (safe to recompute under races)
        self._cache: Dict[str, object] = {}

    # -- sizes --------------------------------------------------------------
    @property
    def n_v(self) -> int:
        return len(self.positions)

    @property
    def n_e(self) -> int:
        return len(self.edges)

    @property
    def n_t(self) -> int:
        return len(self.triangles)

    @property
    def n_T(self) -> int:
        return len(self.tets)

    @property
    def n(self) -> int:
        return self.n_v + self.n_e + self.n_t + self.n_T

    def euler_characteristic(self) -> int:
        return self.n_v - self.n_e + self.n_t - self.n_T

    # -- field access --------------------------------------------------------
    def values(self, fld) -> np.ndarray:
        return (self.f1, self.f2)[_field_index(fld)]

    def rank(self, fld) -> np.ndarray:
        """Position of every vertex in the perturbed order of ``fld``."""
        return self._orders[_field_index(fld)][1]

    def order(self, fld) -> np.ndarray:
        """Vertices sorted by the perturbed order of ``fld``."""
        return self._orders[_field_index(fld)][0]

    def image(self, v: int) -> Tuple[float, float]:
        return (float(self.f1[v]), float(self.f2[v]))

    # -- lookups --------------------------------------------------------------
    def edge_id(self, a: int, b: int) -> int:
        return self.edge_index[(a, b) if a < b else (b, a)]

    def triangle_id(self, a: int, b: int, c: int) -> int:
        return self.tri_index[tuple(sorted((a, b, c)))]

    def edge_link_cycle(self, e: int) -> Tuple[int, ...]:
        """Link vertices of edge ``e`` in cyclic order around the edge."""
        cyc = self._edge_cycles.get(e)
        if cyc is not None:
            return cyc
        a, b = self.edges[e].tolist()
        nbr: Dict[int, List[int]] = {}
        for ti in self.edge_tets[e]:
            c, d = [w for w in self.tets[ti].tolist() if w != a and w != b]
            nbr.setdefault(c, []).append(d)
            nbr.setdefault(d, []).append(c)
        if not nbr or any(len(x) != 2 for x in nbr.values()):
            raise MeshStructureError(f"link of edge {e} is not a circle")
        start = min(nbr)
        cyc_l = [start]
        prev, cur = None, start
        while True:
            x, y = nbr[cur]
            nxt = y if x == prev else x
            if nxt == start:
                break
            cyc_l.append(nxt)
            prev, cur = cur, nxt
        if len(cyc_l) != len(nbr):
            raise MeshStructureError(f"link of edge {e} is not a single circle")
        cyc = tuple(cyc_l)
        self._edge_cycles[e] = cyc
        return cyc

    def vertex_link_triangles(self, v: int) -> List[Tuple[int, int, int]]:
        out = []
        for ti in self.vertex_tets[v]:
            out.append(tuple(sorted(w for w in self.tets[ti].tolist() if w != v)))
        return out

    def neighbors(self, v: int) -> List[int]:
        return [int(a) if a != v else int(b)
                for a, b in (self.edges[e].tolist() for e in self.vertex_edges[v])]

    def link_csr(self):
        """Vertex links flattened to CSR arrays for the kernels.

        Returns ``(lv_ptr, lv, le_ptr, le, lt_ptr, lt)``: link vertices, link
        edges as flat pairs and link triangles as flat triples.
        """
        cached = self._cache.get("link_csr")
        if cached is not None:
            return cached
        lv_ptr, le_ptr, lt_ptr = [0], [0], [0]
        lv, le, lt = [], [], []
        for v in range(self.n_v):
            tris = self.vertex_link_triangles(v)
            lv.extend(self.neighbors(v))
            edges = sorted({p for t in tris for p in itertools.combinations(t, 2)})
            for p in edges:
                le.extend(p)
            for t in tris:
                lt.extend(t)
            lv_ptr.append(len(lv))
            le_ptr.append(len(le) // 2)
            lt_ptr.append(len(lt) // 3)
        out = tuple(np.asarray(x, dtype=np.int64) for x in (lv_ptr, lv, le_ptr, le, lt_ptr, lt))
        self._cache["link_csr"] = out
        return out

    def edge_cycles_csr(self):
        """Edge link cycles flattened to ``(ptr, cyc)``."""
        cached = self._cache.get("edge_cycles_csr")
        if cached is not None:
            return cached
        ptr, cyc = [0], []
        for e in range(self.n_e):
            cyc.extend(self.edge_link_cycle(e))
            ptr.append(len(cyc))
        out = (np.asarray(ptr, dtype=np.int64), np.asarray(cyc, dtype=np.int64))
        self._cache["edge_cycles_csr"] = out
        return out


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationIssue:
    simplex: str  # "vertex" | "edge" | "triangle"
    index: int
    condition: str


@dataclass
class ValidationReport:
    issues: List[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok


def validate_manifold(mesh: TetField) -> ValidationReport:
    """Check that ``mesh`` is a closed combinatorial 3-manifold."""
    report = ValidationReport()
    for k, cof in enumerate(mesh.triangle_tets):
        if len(cof) != 2:
            report.issues.append(
                ValidationIssue("triangle", k, f"has {len(cof)} cofaces, expected 2"))
    for e in range(mesh.n_e):
        try:
            cyc = mesh.edge_link_cycle(e)
            if len(cyc) < 3:
                raise MeshStructureError("short")
        except MeshStructureError:
            report.issues.append(ValidationIssue("edge", e, "link is not a circle"))
    for v in range(mesh.n_v):
        tris = mesh.vertex_link_triangles(v)
        if not tris:
            report.issues.append(ValidationIssue("vertex", v, "isolated vertex"))
            continue
        c = LinkComplex.from_triangles(tris, "sphere")
        edge_count: Dict[Tuple[int, int], int] = {}
        for t in tris:
            for p in itertools.combinations(t, 2):
                edge_count[p] = edge_count.get(p, 0) + 1
        if any(n != 2 for n in edge_count.values()):
            report.issues.append(
                ValidationIssue("vertex", v, "link is not a closed surface"))
            continue
        if _component_count(c.vertices, c.edges) != 1 or c.euler_characteristic() != 2:
            report.issues.append(ValidationIssue("vertex", v, "link is not a 2-sphere"))
    return report


# ---------------------------------------------------------------------------
# Links and reduced Betti numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinkComplex:
    """A link, or a full subcomplex of one.

    ``ambient`` records what the whole link is (``"sphere"`` for a vertex of a
    3-manifold or ``"circle"`` for an edge or a surface vertex); the reduced
    Betti shortcut depends on it.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    triangles: Tuple[Tuple[int, int, int], ...]
    whole_link: bool
    ambient: str = "sphere"

    @classmethod
    def from_triangles(cls, tris, ambient="sphere", whole_link=True):
        tris = tuple(sorted(set(tuple(sorted(t)) for t in tris)))
        edges = sorted({p for t in tris for p in itertools.combinations(t, 2)})
        verts = sorted({w for t in tris for w in t})
        return cls(tuple(verts), tuple(edges), tris, whole_link, ambient)

    def is_empty(self) -> bool:
        return not self.vertices

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def full_subcomplex(self, keep: Iterable[int]) -> "LinkComplex":
        keep = set(keep) & set(self.vertices)
        verts = tuple(sorted(keep))
        edges = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        tris = tuple(t for t in self.triangles if all(w in keep for w in t))
        return LinkComplex(verts, edges, tris, len(verts) == len(self.vertices),
                           self.ambient)


@dataclass(frozen=True)
class ReducedBetti:
    b_neg1: int
    b0: int
    b1: int
    b2: int

    def total(self) -> int:
        return self.b_neg1 + self.b0 + self.b1 + self.b2

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.b_neg1, self.b0, self.b1, self.b2)


def link(mesh: TetField, simplex: Union[int, Tuple[int, int]]) -> LinkComplex:
    """Link of a vertex (an int) or of an edge (a pair of vertex ids)."""
    if isinstance(simplex, (tuple, list)):
        e = mesh.edge_id(*simplex)
        cyc = mesh.edge_link_cycle(e)
        edges = tuple(sorted(tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)])))
                             for i in range(len(cyc))))
        return LinkComplex(tuple(sorted(cyc)), edges, (), True, "circle")
    return LinkComplex.from_triangles(mesh.vertex_link_triangles(int(simplex)), "sphere")


def lower_link(mesh: TetField, v: int, fld="f1") -> LinkComplex:
    """Full subcomplex of ``link(v)`` on the vertices below ``v``."""
    r = mesh.rank(fld)
    lk = link(mesh, v)
    return lk.full_subcomplex(w for w in lk.vertices if r[w] < r[v])


def upper_link(mesh: TetField, v: int, fld="f1") -> LinkComplex:
    r = mesh.rank(fld)
    lk = link(mesh, v)
    return lk.full_subcomplex(w for w in lk.vertices if r[w] > r[v])


def _component_count(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            n -= 1
    return n


def _check_subcomplex(c: LinkComplex):
    vs = set(c.vertices)
    es = set(c.edges)
    for a, b in c.edges:
        if a not in vs or b not in vs:
            raise MeshStructureError(f"edge {(a, b)} has a missing vertex")
    for t in c.triangles:
        for p in itertools.combinations(t, 2):
            if p not in es:
                raise MeshStructureError(f"triangle {t} has a missing edge")


def reduced_betti(c: LinkComplex) -> ReducedBetti:
    """Reduced Z2 Betti numbers of a subcomplex of a 2-sphere or circle."""
    _check_subcomplex(c)
    if c.is_empty():
        return ReducedBetti(1, 0, 0, 0)
    if c.ambient == "circle":
        if c.whole_link:
            return ReducedBetti(0, 0, 1, 0)
        return ReducedBetti(0, _component_count(c.vertices, c.edges) - 1, 0, 0)
    if c.whole_link:
        return ReducedBetti(0, 0, 0, 1)
    comps = _component_count(c.vertices, c.edges)
    # each component of a proper subcomplex of S^2 has b2 = 0, b1 = 1 - chi
    return ReducedBetti(0, comps - 1, comps - c.euler_characteristic(), 0)


def _gf2_rank(rows: List[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        low = pivot & -pivot
        rank += 1
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def z2_reduced_betti(c: LinkComplex) -> ReducedBetti:
    """Reduced Betti numbers by boundary-matrix rank over Z2 (test oracle)."""
    _check_subcomplex(c)
    if c.is_empty():
        return ReducedBetti(1, 0, 0, 0)
    vid = {v: i for i, v in enumerate(c.vertices)}
    eid = {e: i for i, e in enumerate(c.edges)}
    d1 = [(1 << vid[a]) | (1 << vid[b]) for a, b in c.edges]
    d2 = []
    for t in c.triangles:
        row = 0
        for p in itertools.combinations(t, 2):
            row |= 1 << eid[p]
        d2.append(row)
    r1 = _gf2_rank(d1)
    r2 = _gf2_rank(d2)
    nv, ne, nt = len(c.vertices), len(c.edges), len(c.triangles)
    b0 = nv - r1
    b1 = ne - r1 - r2
    b2 = nt - r2
    return ReducedBetti(0, b0 - 1, b1, b2)
