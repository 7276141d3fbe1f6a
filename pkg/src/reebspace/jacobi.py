"""Jacobi set of a bivariate PL field.

An edge ``ab`` is tested with the height function ``h_u = <f, u>`` where
``u`` is normal to the range segment ``f(a) f(b)``.  Link vertices lower
than the edge for ``h_u`` are exactly those to the right of the directed
segment, so the test is a sequence of 2x2 determinant signs; ``u`` itself
is never formed.  The segment is directed from the f1-lower endpoint to
the f1-higher one, which makes ``h_u``-lower agree with f2-lower on the
contours of f1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .mesh import GenericityError, TetField
from .predicates import orient2d

KINDS = ("min-type", "saddle-type", "max-type")


@dataclass(frozen=True)
class EdgeCriticality:
    """Outcome of the edge test; ``kind`` is None for regular edges."""

    kind: Optional[str]
    simple: bool
    lower_arcs: int

    @property
    def critical(self) -> bool:
        return self.kind is not None


REGULAR = EdgeCriticality(None, True, 1)


def _oriented(mesh: TetField, e: int) -> Tuple[int, int]:
    a, b = mesh.edges[e].tolist()
    r = mesh.rank("f1")
    return (a, b) if r[a] < r[b] else (b, a)


def _classify_signs(lower: Sequence[bool]) -> EdgeCriticality:
    n = len(lower)
    n_low = sum(lower)
    if n_low == 0:
        return EdgeCriticality("min-type", True, 0)
    if n_low == n:
        return EdgeCriticality("max-type", True, 1)
    runs = sum(1 for i in range(n) if lower[i] and not lower[i - 1])
    if runs == 1:
        return REGULAR
    return EdgeCriticality("saddle-type", runs == 2, runs)


def _lower_flags(mesh, tail, head, cyc, signs=None, flip=False):
    pa, pb = mesh.image(tail), mesh.image(head)
    tie = min(tail, head)
    out = []
    for i, w in enumerate(cyc):
        s = signs[i] if signs is not None else 0
        if s == 0:
            s = orient2d(pa, pb, mesh.image(w))
        if flip:
            s = -s
        out.append(s < 0 or (s == 0 and w < tie))
    return out


def edge_criticality(mesh: TetField, e: int, flip: bool = False) -> EdgeCriticality:
    """Classify mesh edge ``e``.

    ``flip=True`` uses the opposite normal; criticality and simplicity do
    not depend on the choice, only min- and max-type trade places.
    """
    tail, head = _oriented(mesh, e)
    if mesh.image(tail) == mesh.image(head):
        raise GenericityError(f"edge {e} has a zero-length range image", witness=e)
    return _classify_signs(_lower_flags(mesh, tail, head, mesh.edge_link_cycle(e), flip=flip))


@dataclass
class JacobiSet:
    """Critical edges of the field and their adjacency.

    Attributes
    ----------
    edges : list of int
        Critical mesh edge ids, ascending.
    kind, simple, lower_arcs : dict
        Per critical edge.
    adjacency : dict
        Jacobi vertex -> incident critical edges.
    """

    mesh: TetField
    edges: List[int]
    kind: Dict[int, str]
    simple: Dict[int, bool]
    lower_arcs: Dict[int, int]
    adjacency: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def vertices(self) -> List[int]:
        return sorted(self.adjacency)

    @property
    def j_e(self) -> int:
        return len(self.edges)

    @property
    def j_v(self) -> int:
        return len(self.adjacency)

    @property
    def non_simple(self) -> List[int]:
        return [e for e in self.edges if not self.simple[e]]

    def is_simple(self) -> bool:
        return not self.non_simple

    def degree(self, v: int) -> int:
        return len(self.adjacency.get(v, ()))

    def neighbors(self, v: int) -> List[int]:
        out = []
        for e in self.adjacency.get(v, ()):
            a, b = self.mesh.edges[e].tolist()
            out.append(b if a == v else a)
        return out

    def is_manifold(self) -> bool:
        """Every Jacobi vertex has degree exactly 2."""
        return all(len(x) == 2 for x in self.adjacency.values())

    def degree_violations(self) -> List[int]:
        return [v for v, x in sorted(self.adjacency.items()) if len(x) != 2]

    def components(self) -> List[List[int]]:
        """Vertex sets of the connected components, each sorted."""
        seen = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for w in self.neighbors(x):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def up_edges(self, v: int) -> List[int]:
        """Jacobi edges leaving ``v`` toward larger f1."""
        r = self.mesh.rank("f1")
        return [e for e, w in zip(self.adjacency.get(v, ()), self.neighbors(v)) if r[w] > r[v]]

    def down_edges(self, v: int) -> List[int]:
        r = self.mesh.rank("f1")
        return [e for e, w in zip(self.adjacency.get(v, ()), self.neighbors(v)) if r[w] < r[v]]

    def __contains__(self, e) -> bool:
        return e in self.kind


def _range_is_flat(mesh: TetField) -> bool:
    """All vertex images on one line (e.g. a constant field)."""
    pa = mesh.image(0)
    others = [v for v in range(1, mesh.n_v) if mesh.image(v) != pa]
    if not others:
        return True
    pb = mesh.image(others[0])
    return all(orient2d(pa, pb, mesh.image(v)) == 0 for v in range(mesh.n_v))


def compute_jacobi_set(mesh: TetField) -> JacobiSet:
    """Test every edge and assemble the Jacobi set."""
    edges = mesh.edges
    r = mesh.rank("f1")
    swap = r[edges[:, 0]] > r[edges[:, 1]]
    tail = np.where(swap, edges[:, 1], edges[:, 0])
    head = np.where(swap, edges[:, 0], edges[:, 1])
    same = (mesh.f1[tail] == mesh.f1[head]) & (mesh.f2[tail] == mesh.f2[head])
    if same.any():
        e = int(np.argmax(same))
        raise GenericityError(f"edge {e} has a zero-length range image", witness=e)
    if _range_is_flat(mesh):
        raise GenericityError("the range image is a segment: f1 and f2 are affinely dependent")
    ptr, cyc = mesh.edge_cycles_csr()
    signs = kernels.edge_link_signs(ptr, cyc, tail, head, mesh.f1, mesh.f2)
    ptr_l = ptr.tolist()
    cyc_l = cyc.tolist()
    signs_l = signs.tolist()
    tail_l, head_l = tail.tolist(), head.tolist()
    crit, kind, simple, runs = [], {}, {}, {}
    for e in range(mesh.n_e):
        lo, hi = ptr_l[e], ptr_l[e + 1]
        s = signs_l[lo:hi]
        if 0 in s:
            lower = _lower_flags(mesh, tail_l[e], head_l[e], cyc_l[lo:hi], s)
        else:
            lower = [x < 0 for x in s]
        c = _classify_signs(lower)
        if c.critical:
            crit.append(e)
            kind[e] = c.kind
            simple[e] = c.simple
            runs[e] = c.lower_arcs
    adjacency: Dict[int, List[int]] = {}
    for e in crit:
        a, b = edges[e].tolist()
        adjacency.setdefault(a, []).append(e)
        adjacency.setdefault(b, []).append(e)
    return JacobiSet(mesh, crit, kind, simple, runs, adjacency)


def jacobi_extrema(js: JacobiSet, mesh: TetField, rg1=None) -> Tuple[List[int], List[int]]:
    """Minima and maxima of f1 restricted to the Jacobi set.

    Vertices that are already nodes of ``rg1`` (critical points of f1) are
    skipped.
    """
    r = mesh.rank("f1")
    nodes = set(rg1.vertex_node) if rg1 is not None else set()
    j_min, j_max = [], []
    for v in js.vertices:
        if v in nodes:
            continue
        nb = js.neighbors(v)
        if all(r[w] > r[v] for w in nb):
            j_min.append(v)
        elif all(r[w] < r[v] for w in nb):
            j_max.append(v)
    return j_min, j_max


def jacobi_branch_points(js: JacobiSet, mesh: TetField, rg1=None) -> List[int]:
    """Non-manifold Jacobi vertices whose f1 in/out degree is not (1, 1).

    These only occur when the simplicity assumption fails; they are
    extra points of topological change in forced mode.
    """
    r = mesh.rank("f1")
    nodes = set(rg1.vertex_node) if rg1 is not None else set()
    out = []
    for v in js.vertices:
        if v in nodes:
            continue
        nb = js.neighbors(v)
        down = sum(1 for w in nb if r[w] < r[v])
        up = len(nb) - down
        if down >= 1 and up >= 1 and (down, up) != (1, 1):
            out.append(v)
    return out


def monotonicity_violations(js: JacobiSet) -> List[Tuple[int, str]]:
    """Jacobi edges along which f1 or f2 fails to be strictly monotone."""
    out = []
    m = js.mesh
    for e in js.edges:
        a, b = m.edges[e].tolist()
        if m.f1[a] == m.f1[b]:
            out.append((e, "f1"))
        if m.f2[a] == m.f2[b]:
            out.append((e, "f2"))
    return out


def follow_to_level(js: JacobiSet, e: int, cut: int) -> int:
    """Follow the Jacobi path through edge ``e`` monotonically in f1 until
    an edge crossing ``cut`` (ranks ``< cut <=``) is reached.

    Raises ValueError if the path turns back (an f1-extremum of the Jacobi
    set) or branches before reaching the cut.
    """
    m = js.mesh
    r = m.rank("f1")
    cur = e
    while True:
        a, b = m.edges[cur].tolist()
        lo, hi = (a, b) if r[a] < r[b] else (b, a)
        if r[lo] < cut <= r[hi]:
            return cur
        v = hi if r[hi] < cut else lo
        going_up = r[hi] < cut
        nxt = [x for x in (js.up_edges(v) if going_up else js.down_edges(v)) if x != cur]
        if len(nxt) != 1:
            raise ValueError(f"jacobi path through edge {e} does not reach cut {cut}")
        cur = nxt[0]
