"""PL critical points and augmented Reeb graphs.

The Reeb graph is built by one sweep over the vertices in perturbed order.
Every edge crossing the current level carries an arc label; a regular vertex
hands its label on, a critical vertex becomes a node.  Splits are resolved by
an interleaved breadth-first search over the level set just above the
vertex, so only the smaller pieces are ever walked in full.

Levels are addressed by a *cut*: ``Level(cut, value)`` sits strictly between
the vertices of rank ``cut - 1`` and ``cut``.  Every position in the graph
has an integer-and-value key, ``(2 * rank, value)`` for a vertex and
``(2 * cut - 1, value)`` for a level, so ordering never depends on value ties.
"""
from __future__ import annotations

import bisect
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .mesh import GenericityError, TetField, _field_index, link, \
    reduced_betti, ReducedBetti

NODE_TYPES = ("minimum", "maximum", "down-fork", "up-fork", "degree2")


# ---------------------------------------------------------------------------
# Critical points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Criticality:
    """PL criticality of a vertex.

    ``kind`` is ``regular``, ``minimum``, ``saddle1``, ``saddle2`` or
    ``maximum`` on a 3-manifold, and ``regular``, ``minimum``, ``saddle`` or
    ``maximum`` on a surface.  ``index`` is None for regular and degenerate
    vertices.
    """

    kind: str
    degenerate: bool
    index: Optional[int]
    betti: ReducedBetti

    @property
    def critical(self) -> bool:
        return self.kind != "regular"


_KINDS_3D = ("minimum", "saddle1", "saddle2", "maximum")
_KINDS_2D = ("minimum", "saddle", "maximum")


def criticality_from_betti(b: ReducedBetti, dim: int = 3) -> Criticality:
    kinds = _KINDS_3D if dim == 3 else _KINDS_2D
    bt = b.as_tuple()
    total = sum(bt)
    if total == 0:
        return Criticality("regular", False, None, b)
    if total == 1:
        i = bt.index(1)
        return Criticality(kinds[i], False, i, b)
    # several nonzero numbers: report the lowest dimensional feature
    i = next(k for k, x in enumerate(bt) if x)
    kind = kinds[min(max(i, 1), dim - 1)]
    return Criticality(kind, True, None, b)


def classify_vertex(domain, fld, v: int) -> Criticality:
    """Classify vertex ``v`` of a tet mesh or contour surface."""
    if isinstance(domain, TetField):
        r = domain.rank(fld)
        lk = link(domain, v)
        low = lk.full_subcomplex(w for w in lk.vertices if r[w] < r[v])
        return criticality_from_betti(reduced_betti(low), 3)
    r = domain.rank(fld)
    lk = domain.link(v)
    low = lk.full_subcomplex(w for w in lk.vertices if r[w] < r[v])
    return criticality_from_betti(reduced_betti(low), 2)


def _betti_from_stats(n_lo, comps_lo, chi_lo, n_hi) -> ReducedBetti:
    if n_lo == 0:
        return ReducedBetti(1, 0, 0, 0)
    if n_hi == 0:
        return ReducedBetti(0, 0, 0, 1)
    return ReducedBetti(0, comps_lo - 1, comps_lo - chi_lo, 0)


def classify_all(mesh: TetField, fld="f1") -> List[Criticality]:
    """Criticality of every vertex, computed with the link kernel."""
    stats = kernels.vertex_link_stats(*mesh.link_csr(), mesh.rank(fld))
    return [criticality_from_betti(_betti_from_stats(s[0], s[1], s[2], s[3]), 3)
            for s in stats.tolist()]


def critical_counts(crits: Sequence[Criticality]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for c in crits:
        if c.critical:
            key = c.kind + ("*" if c.degenerate else "")
            out[key] = out.get(key, 0) + 1
    return out


def euler_sum(crits: Sequence[Criticality]) -> int:
    """Alternating sum of indices over simple critical vertices."""
    return sum((-1) ** c.index for c in crits if c.critical and not c.degenerate)


# ---------------------------------------------------------------------------
# Levels
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Level:
    """A regular level between ranks ``cut - 1`` and ``cut``."""

    cut: int
    value: object

    @property
    def key(self) -> Tuple[int, object]:
        return (2 * self.cut - 1, self.value)


def level_at(sorted_values: Sequence, value) -> Level:
    """Level for a raw value; raises if ``value`` equals a vertex value."""
    lo = bisect.bisect_left(sorted_values, value)
    hi = bisect.bisect_right(sorted_values, value)
    if lo != hi:
        raise GenericityError(f"level {value!r} coincides with a vertex value",
                              witness=value)
    return Level(lo, value)


def level_between(sorted_values: Sequence, lo_key, hi_key) -> Level:
    """A level strictly inside the open key interval, near its value midpoint.

    The midpoint of the two values is used when it lands in a gap between
    vertex values inside the interval; otherwise the closest admissible gap
    is taken and its own midpoint used instead.
    """
    mid = (Fraction(lo_key[1]) + Fraction(hi_key[1])) / 2
    return level_near(sorted_values, lo_key, hi_key, mid)


def level_near(sorted_values: Sequence, lo_key, hi_key, target) -> Level:
    """The regular level inside ``(lo_key, hi_key)`` closest to ``target``.

    ``target`` itself is returned when it lies in an admissible gap.
    """
    vlo, vhi = Fraction(lo_key[1]), Fraction(hi_key[1])
    target = Fraction(target)
    c_min = (lo_key[0] + 2) // 2
    c_max = (hi_key[0] + 1) // 2
    n = len(sorted_values)
    c_mid = min(max(bisect.bisect_left(sorted_values, target), c_min), c_max)
    for c in sorted(range(c_min, c_max + 1), key=lambda c: (abs(c - c_mid), c)):
        if c <= 0 or c >= n:
            continue
        a, b = Fraction(sorted_values[c - 1]), Fraction(sorted_values[c])
        if 2 * c - 1 == lo_key[0]:
            a = max(a, vlo)
        if 2 * c - 1 == hi_key[0]:
            b = min(b, vhi)
        if a < b:
            return Level(c, target if a < target < b else (a + b) / 2)
    raise GenericityError("arc has no regular interior level", witness=(lo_key, hi_key))


def arc_levels(sorted_values: Sequence, lo_key, hi_key, k: int) -> List[Level]:
    """Up to ``k`` distinct regular levels spread over the arc interior."""
    vlo, vhi = Fraction(lo_key[1]), Fraction(hi_key[1])
    out: List[Level] = []
    for i in range(1, k + 1):
        lvl = level_near(sorted_values, lo_key, hi_key, vlo + (vhi - vlo) * i / (k + 1))
        if lvl not in out:
            out.append(lvl)
    return out


def _key_lt(a, b) -> bool:
    if a[0] != b[0]:
        return a[0] < b[0]
    return a[1] < b[1]


# ---------------------------------------------------------------------------
# Reeb graph
# ---------------------------------------------------------------------------

@dataclass
class ReebNode:
    id: int
    type: str
    value: object
    key: Tuple[int, object]
    vertex: Optional[int]
    down: int
    up: int
    degenerate: bool = False
    reason: str = "C1"
    witness: object = None


@dataclass
class ReebArc:
    id: int
    lo: int
    hi: int
    base: int


@dataclass(frozen=True)
class ReebPoint:
    """A point of a Reeb graph: on an arc interior or at a node."""

    arc: Optional[int]
    node: Optional[int]
    value: object
    key: Tuple[int, object]

    @property
    def is_node(self) -> bool:
        return self.node is not None


def _node_type(down: int, up: int) -> str:
    if down == 0 and up == 1:
        return "minimum"
    if down == 1 and up == 0:
        return "maximum"
    if down == 1 and up == 1:
        return "degree2"
    if down == 0:
        return "minimum"
    if up == 0:
        return "maximum"
    return "down-fork" if down > up else ("up-fork" if up > down else "degree2")


class _SweepDomain:
    """The 2-skeleton view shared by tet meshes and contour surfaces."""

    def __init__(self, n_v, values, rank, order, edges, edge_index, thirds,
                 nbrs, crit, upper_groups):
        self.n_v = n_v
        self.values = values
        self.rank = rank
        self.order = order
        self.edges = edges
        self.edge_index = edge_index
        self.thirds = thirds
        self.nbrs = nbrs
        self.crit = crit
        self.upper_groups = upper_groups


def _groups(upper, link_edges, rank, rv):
    parent = {w: w for w in upper}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in link_edges:
        if rank[a] > rv and rank[b] > rv:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    out: Dict[int, List[int]] = {}
    for w in upper:
        out.setdefault(find(w), []).append(w)
    return [sorted(g) for g in sorted(out.values())]


def _tet_domain(mesh: TetField, fld) -> _SweepDomain:
    fi = _field_index(fld)
    rank = mesh.rank(fi).tolist()
    crits = classify_all(mesh, fi)
    ptr, cyc = mesh.edge_cycles_csr()
    ptr = ptr.tolist()
    cyc = cyc.tolist()
    thirds = [cyc[ptr[e]:ptr[e + 1]] for e in range(mesh.n_e)]
    nbrs = [mesh.neighbors(v) for v in range(mesh.n_v)]
    lv_ptr, lv, le_ptr, le, lt_ptr, lt = mesh.link_csr()
    le_l = le.tolist()
    le_ptr_l = le_ptr.tolist()

    def upper_groups(v):
        rv = rank[v]
        upper = [w for w in nbrs[v] if rank[w] > rv]
        if not crits[v].critical:
            return [upper]
        pairs = [(le_l[2 * i], le_l[2 * i + 1]) for i in range(le_ptr_l[v], le_ptr_l[v + 1])]
        return _groups(upper, pairs, rank, rv)

    return _SweepDomain(mesh.n_v, mesh.values(fi), rank, mesh.order(fi).tolist(),
                        mesh.edges.tolist(), mesh.edge_index, thirds, nbrs,
                        crits, upper_groups)


class ReebGraph:
    """Augmented Reeb graph with a quotient index.

    Build with :meth:`from_tetfield` or :meth:`from_surface`.  ``nodes`` and
    ``arcs`` are lists of :class:`ReebNode` and :class:`ReebArc`; arc ids are
    dense.  ``locate`` maps domain points to :class:`ReebPoint`.
    """

    def __init__(self):
        self.nodes: List[ReebNode] = []
        self.arcs: List[ReebArc] = []
        self.field = None
        self.domain = None
        self.vertex_node: Dict[int, int] = {}
        self.base: Optional["ReebGraph"] = None
        # base arc id -> list of (lo_key, hi_key, arc id), only when augmented
        self.pieces: Dict[int, List[Tuple[tuple, tuple, int]]] = {}
        self._hist = None
        self._redirect = None
        self._sorted_values = None
        self._sd = None

    # -- construction ----------------------------------------------------
    @classmethod
    def from_tetfield(cls, mesh: TetField, fld="f1") -> "ReebGraph":
        rg = cls._sweep(_tet_domain(mesh, fld))
        rg.field = _field_index(fld)
        rg.domain = mesh
        return rg

    @classmethod
    def from_surface(cls, surface) -> "ReebGraph":
        rg = cls._sweep(surface.sweep_domain())
        rg.field = "f2"
        rg.domain = surface
        return rg

    @classmethod
    def _sweep(cls, sd: _SweepDomain) -> "ReebGraph":
        rg = cls()
        rg._sd = sd
        rank = sd.rank
        values = sd.values
        edge_index = sd.edge_index
        hist: List[List[Tuple[int, int]]] = [[] for _ in range(len(sd.edges))]
        redirect: Dict[int, Tuple[int, Optional[int]]] = {}
        alias: Dict[int, int] = {}
        arc_lo: List[int] = []
        arc_hi: List[int] = []

        def current(label):
            root = label
            while root in alias:
                root = alias[root]
            while label != root:
                nxt = alias[label]
                alias[label] = root
                label = nxt
            return root

        def eid(a, b):
            return edge_index[(a, b) if a < b else (b, a)]

        def new_arc(node_id):
            arc_lo.append(node_id)
            arc_hi.append(-1)
            return len(arc_lo) - 1

        for v in sd.order:
            t = rank[v]
            nb = sd.nbrs[v]
            incoming = sorted({current(hist[eid(v, w)][-1][1])
                               for w in nb if rank[w] < t})
            crit = sd.crit[v]
            groups = sd.upper_groups(v)
            groups = [g for g in groups if g]
            if not crit.critical and len(incoming) == 1 and len(groups) == 1:
                lab = incoming[0]
                for w in groups[0]:
                    hist[eid(v, w)].append((t, lab))
                continue

            if len(groups) >= 2:
                roots, exhausted, remaining = _split_search(
                    v, t, groups, rank, sd.thirds, eid, len(sd.edges))
                up = len(set(roots[0]))
            else:
                roots, exhausted, remaining = None, None, None
                up = len(groups)
            node_id = len(rg.nodes)
            down = len(incoming)
            rg.nodes.append(ReebNode(
                node_id, _node_type(down, up), values[v], (2 * t, values[v]), v,
                down, up, crit.degenerate))
            rg.vertex_node[v] = node_id
            for lab in incoming:
                arc_hi[lab] = node_id

            if len(groups) == 1:
                r_arc = new_arc(node_id)
                for lab in incoming:
                    redirect[lab] = (t, r_arc)
                    alias[lab] = r_arc
                for w in groups[0]:
                    hist[eid(v, w)].append((t, r_arc))
            elif len(groups) >= 2:
                group_root, root_edges = roots
                for r in exhausted:
                    a = new_arc(node_id)
                    for e in root_edges[r]:
                        hist[e].append((t, a))
                if remaining is not None:
                    r_arc = new_arc(node_id)
                    for lab in incoming:
                        redirect[lab] = (t, r_arc)
                        alias[lab] = r_arc
                    for gi, g in enumerate(groups):
                        if group_root[gi] == remaining:
                            for w in g:
                                hist[eid(v, w)].append((t, r_arc))
                else:
                    for lab in incoming:
                        redirect[lab] = (t, None)
            else:
                for lab in incoming:
                    redirect[lab] = (t, None)

        for a in range(len(arc_lo)):
            if arc_hi[a] < 0:
                raise GenericityError(f"arc {a} never closed during sweep", witness=a)
            rg.arcs.append(ReebArc(a, arc_lo[a], arc_hi[a], a))
        rg._hist = hist
        rg._redirect = redirect
        rg._sorted_values = sorted(values[v] for v in sd.order)
        return rg

    # -- basic queries ---------------------------------------------------------
    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def components(self) -> int:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n = len(parent)
        for a in self.arcs:
            ra, rb = find(a.lo), find(a.hi)
            if ra != rb:
                parent[ra] = rb
                n -= 1
        return n

    def betti1(self) -> int:
        """Number of independent loops."""
        return len(self.arcs) - len(self.nodes) + self.components()

    def down_arcs(self, n: int) -> List[int]:
        return [a.id for a in self.arcs if a.hi == n]

    def up_arcs(self, n: int) -> List[int]:
        return [a.id for a in self.arcs if a.lo == n]

    def sorted_values(self):
        return self._root()._sorted_values

    def _root(self) -> "ReebGraph":
        g = self
        while g.base is not None:
            g = g.base
        return g

    def arcs_at(self, level: Level) -> List[int]:
        """Arcs whose open key span contains ``level``."""
        k = level.key
        return [a.id for a in self.arcs
                if _key_lt(self.nodes[a.lo].key, k) and _key_lt(k, self.nodes[a.hi].key)]

    def point_count(self, level: Level) -> int:
        return len(self.arcs_at(level))

    def level(self, value) -> Level:
        return level_at(self.sorted_values(), value)

    # -- quotient map ----------------------------------------------------------
    def _base_edge_arc(self, e: int, tau: int) -> int:
        root = self._root()
        h = root._hist[e]
        lab = None
        for time, label in reversed(h):
            if time <= tau:
                lab = label
                break
        if lab is None:
            raise ValueError(f"edge {e} does not cross the level after rank {tau}")
        red = root._redirect
        while lab in red and red[lab][0] <= tau:
            lab = red[lab][1]
            if lab is None:
                raise ValueError(f"edge {e} is not crossing at rank {tau}")
        return lab

    def _refine(self, base_arc: int, key) -> ReebPoint:
        """Map a point of a root-graph arc through the augmentation chain."""
        chain = []
        g = self
        while g.base is not None:
            chain.append(g)
            g = g.base
        arc = base_arc
        value = key[1]
        for g in reversed(chain):
            for lo_key, hi_key, new in g.pieces[arc]:
                if lo_key == key:
                    return ReebPoint(None, g.arcs[new].lo, value, key) \
                        if g is self else self._node_point(g, g.arcs[new].lo, key)
                if _key_lt(lo_key, key) and _key_lt(key, hi_key):
                    arc = new
                    break
                if hi_key == key:
                    return ReebPoint(None, g.arcs[new].hi, value, key) \
                        if g is self else self._node_point(g, g.arcs[new].hi, key)
            else:
                raise ValueError("point falls outside every arc piece")
        return ReebPoint(arc, None, value, key)

    def _node_point(self, g, node_id, key):
        # a node of an intermediate graph is still a node later on
        vid = g.nodes[node_id]
        for n in self.nodes:
            if n.key == vid.key and n.vertex == vid.vertex:
                return ReebPoint(None, n.id, key[1], key)
        raise ValueError("node lost during augmentation")

    def locate_edge(self, e: int, level: Level) -> ReebPoint:
        """Reeb point of the contour through crossing edge ``e`` at ``level``."""
        base = self._base_edge_arc(e, level.cut - 1)
        return self._refine(base, level.key)

    def locate_vertex(self, v: int) -> ReebPoint:
        root = self._root()
        sd = root._sd
        t = sd.rank[v]
        key = (2 * t, sd.values[v])
        for n in self.nodes:
            if n.key == key:
                return ReebPoint(None, n.id, n.value, key)
        upper = [w for w in sd.nbrs[v] if sd.rank[w] > t]
        if not upper:
            raise ValueError(f"vertex {v} is a maximum but not a node")
        e = sd.edge_index[tuple(sorted((v, upper[0])))]
        base = self._base_edge_arc(e, t)
        return self._refine(base, key)

    def locate(self, point) -> ReebPoint:
        """Locate a domain point.

        ``point`` is a vertex id, or ``(simplex, bary)`` where ``simplex`` is
        a tuple of vertex ids and ``bary`` its barycentric coordinates.
        """
        if isinstance(point, (int, np.integer)):
            return self.locate_vertex(int(point))
        simplex, bary = point
        simplex = [int(s) for s in simplex]
        bary = [Fraction(b) for b in bary]
        if len(simplex) != len(bary) or any(b < 0 for b in bary) or sum(bary) != 1:
            raise ValueError("point is not a convex combination of the simplex")
        sd = self._root()._sd
        for s in simplex:
            if not 0 <= s < sd.n_v:
                raise ValueError(f"vertex {s} is not in the domain")
        live = [(b, s) for b, s in zip(bary, simplex) if b != 0]
        if len(live) == 1:
            return self.locate_vertex(live[0][1])
        y = sum(b * Fraction(sd.values[s]) for b, s in live)
        svals = self.sorted_values()
        lo = bisect.bisect_left(svals, y)
        hi = bisect.bisect_right(svals, y)
        verts = [s for _, s in live]
        ranks = [sd.rank[s] for s in verts]
        if lo != hi:
            # the level passes through vertex values: use the perturbed
            # placement just above every vertex of the carrier with that value
            tied = [sd.rank[s] for s in verts if Fraction(sd.values[s]) == y]
            cut = (max(tied) + 1) if tied else hi
        else:
            cut = lo
        lvl = Level(cut, y)
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                a, b = verts[i], verts[j]
                if sd.rank[a] > sd.rank[b]:
                    a, b = b, a
                pair = (a, b) if a < b else (b, a)
                if pair in sd.edge_index and sd.rank[a] < cut <= sd.rank[b]:
                    return self.locate_edge(sd.edge_index[pair], lvl)
        # no carrier edge crosses: the point sits at an extreme vertex value
        v = verts[int(np.argmax(ranks))] if cut > max(ranks) else verts[int(np.argmin(ranks))]
        return self.locate_vertex(v)

    # -- description -----------------------------------------------------------
    def node_sequence(self) -> List[Tuple[str, object]]:
        return [(n.type, n.value) for n in sorted(self.nodes, key=lambda n: _sort_key(n.key))]

    def signature(self) -> Tuple[str, ...]:
        return tuple(t for t, _ in self.node_sequence())

    def type_counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for n in self.nodes:
            out[n.type] = out.get(n.type, 0) + 1
        return out

    def check_degrees(self) -> List[str]:
        """Violations of the node-type degree table and of arc monotonicity."""
        want = {"minimum": (0, 1), "maximum": (1, 0), "down-fork": (2, 1),
                "up-fork": (1, 2), "degree2": (1, 1)}
        down = [0] * len(self.nodes)
        up = [0] * len(self.nodes)
        problems = []
        for a in self.arcs:
            up[a.lo] += 1
            down[a.hi] += 1
            if not _key_lt(self.nodes[a.lo].key, self.nodes[a.hi].key):
                problems.append(f"arc {a.id} is not increasing")
        for n in self.nodes:
            if n.degenerate:
                continue
            if (down[n.id], up[n.id]) != want[n.type]:
                problems.append(f"node {n.id} ({n.type}) has degrees {(down[n.id], up[n.id])}")
        return problems


def _sort_key(key):
    return (key[0], Fraction(key[1]))


def _split_search(v, t, groups, rank, thirds, eid, n_e):
    """Interleaved search over the level set just above vertex ``v``.

    Returns ``((group_root, root_edges), exhausted_roots, remaining_root)``
    where ``group_root[i]`` is the merged root of upper-link group ``i`` and
    ``root_edges`` lists the crossing edges visited per exhausted root.
    """
    parent = list(range(len(groups)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    visited: Dict[int, int] = {}
    frontier: Dict[int, deque] = {}
    edges_of: Dict[int, List[int]] = {}
    for gi, g in enumerate(groups):
        seeds = [eid(v, w) for w in g]
        for e in seeds:
            visited[e] = gi
        frontier[gi] = deque((e, v, w) for e, w in zip(seeds, g))
        edges_of[gi] = list(seeds)

    def active_roots():
        return [r for r in frontier if frontier[r]]

    act = active_roots()
    while len(act) >= 2:
        for r in act:
            r = find(r)
            q = frontier.get(r)
            if not q:
                continue
            e, a, b = q.popleft()
            for c in thirds[e]:
                if rank[c] <= t:
                    na, nb = c, b
                else:
                    na, nb = a, c
                ne = eid(na, nb)
                g = visited.get(ne)
                if g is None:
                    visited[ne] = r
                    q.append((ne, na, nb))
                    edges_of[r].append(ne)
                    continue
                h = find(g)
                if h != r:
                    # merge the smaller bookkeeping into the larger
                    if len(edges_of[h]) > len(edges_of[r]):
                        h, r = r, h
                    parent[h] = r
                    frontier[r].extend(frontier.pop(h))
                    edges_of[r].extend(edges_of.pop(h))
                    q = frontier[r]
        act = sorted({find(r) for r in active_roots()})
    roots = sorted({find(gi) for gi in range(len(groups))})
    group_root = [find(gi) for gi in range(len(groups))]
    remaining = act[0] if act else None
    exhausted = [r for r in roots if r != remaining]
    return (group_root, edges_of), exhausted, remaining


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InsertPoint:
    """A point to insert: on base-graph arc ``arc`` at position ``key``."""

    arc: int
    key: Tuple[int, object]
    reason: str
    witness: object = None
    vertex: Optional[int] = None


def augment(rg: ReebGraph, points: Sequence[InsertPoint]) -> ReebGraph:
    """Insert degree-2 nodes at ``points`` (arc ids refer to ``rg``).

    Points that coincide with an existing node, or with each other, are
    absorbed.
    """
    out = ReebGraph()
    out.base = rg
    out.field = rg.field
    out.domain = rg.domain
    out.nodes = [ReebNode(**vars(n)) for n in rg.nodes]
    out.vertex_node = dict(rg.vertex_node)
    by_arc: Dict[int, List[InsertPoint]] = {}
    node_keys = {n.key for n in rg.nodes}
    for p in points:
        if p.key in node_keys:
            continue
        by_arc.setdefault(p.arc, []).append(p)
    for a in rg.arcs:
        pts = sorted(by_arc.get(a.id, []), key=lambda p: (_sort_key(p.key), repr(p.witness)))
        lo_node = a.lo
        lo_key = rg.nodes[a.lo].key
        pieces = []
        seen = set()
        for p in pts:
            if p.key in seen:
                continue
            seen.add(p.key)
            if not (_key_lt(rg.nodes[a.lo].key, p.key) and _key_lt(p.key, rg.nodes[a.hi].key)):
                raise ValueError(f"insert point {p} is outside arc {a.id}")
            nid = len(out.nodes)
            out.nodes.append(ReebNode(nid, "degree2", p.key[1], p.key, p.vertex, 1, 1,
                                      False, p.reason, p.witness))
            if p.vertex is not None:
                out.vertex_node[p.vertex] = nid
            aid = len(out.arcs)
            out.arcs.append(ReebArc(aid, lo_node, nid, a.base))
            pieces.append((lo_key, p.key, aid))
            lo_node, lo_key = nid, p.key
        aid = len(out.arcs)
        out.arcs.append(ReebArc(aid, lo_node, a.hi, a.base))
        pieces.append((lo_key, rg.nodes[a.hi].key, aid))
        out.pieces[a.id] = pieces
    return out


# ---------------------------------------------------------------------------
# Topological equivalence
# ---------------------------------------------------------------------------

def _ordered(rg: ReebGraph):
    nodes = sorted(rg.nodes, key=lambda n: _sort_key(n.key))
    pos = {n.id: i for i, n in enumerate(nodes)}
    arcs = sorted((pos[a.lo], pos[a.hi]) for a in rg.arcs)
    return [n.type for n in nodes], arcs


def order_equivalent(a: ReebGraph, b: ReebGraph) -> bool:
    """Equal value-ordered node types and equal arcs under that pairing."""
    ta, aa = _ordered(a)
    tb, ab = _ordered(b)
    return ta == tb and aa == ab


def isomorphic(a: ReebGraph, b: ReebGraph) -> bool:
    """Type-preserving isomorphism of the directed multigraphs."""
    import networkx as nx
    from networkx.algorithms.isomorphism import MultiDiGraphMatcher

    def to_nx(rg):
        g = nx.MultiDiGraph()
        for n in rg.nodes:
            g.add_node(n.id, type=n.type)
        for arc in rg.arcs:
            g.add_edge(arc.lo, arc.hi)
        return g

    if sorted(n.type for n in a.nodes) != sorted(n.type for n in b.nodes):
        return False
    if len(a.arcs) != len(b.arcs):
        return False
    gm = MultiDiGraphMatcher(to_nx(a), to_nx(b),
                             node_match=lambda x, y: x["type"] == y["type"])
    return gm.is_isomorphic()


def reeb_graphs_topologically_equivalent(a: ReebGraph, b: ReebGraph) -> bool:
    """Whether two Reeb graphs have the same critical structure.

    The order-preserving node pairing is tried first.  If it fails, a
    type-preserving isomorphism is accepted: nodes that are not joined by an
    arc may exchange their order along the sweep without any change of
    topology.
    """
    if len(a.nodes) != len(b.nodes):
        return False
    return order_equivalent(a, b) or isomorphic(a, b)
