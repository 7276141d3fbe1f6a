"""Net-like skeleton of the Reeb space.

The net starts as the Jacobi structure.  Every restricted f2 graph of the
MDRG is then embedded: its nodes are placed on the Jacobi structure edge
carrying their witness, and each of its arcs becomes a ``reeb-arc`` edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .contour import edge_parameter, edge_point, sorted_f1
from .jacobi import follow_to_level
from .mdrg import Mdrg, compute_mdrg
from .mesh import GenericityError, TetField
from .reebgraph import ReebGraph, ReebPoint, level_at

NODE_KINDS = ("jacobi-vertex", "double-point", "embedded-rg2-node")
EDGE_KINDS = ("jacobi", "reeb-arc")


class NetConsistencyError(RuntimeError):
    pass


@dataclass
class NetNode:
    id: int
    point: Tuple[Fraction, Fraction]
    kind: str
    provenance: dict


@dataclass(frozen=True)
class NetEdge:
    src: int
    dst: int
    kind: str


@dataclass
class ReebSpaceNet:
    """Nodes, edges and the two projections.

    ``omega1`` and ``omega2`` map node ids to points of the Reeb graphs of
    f1 (augmented) and f2.
    """

    mdrg: Mdrg
    rg_f2: ReebGraph
    nodes: List[NetNode] = field(default_factory=list)
    edges: List[NetEdge] = field(default_factory=list)
    omega1: Dict[int, ReebPoint] = field(default_factory=dict)
    omega2: Dict[int, ReebPoint] = field(default_factory=dict)
    embedded: Dict[Tuple[int, Fraction], int] = field(default_factory=dict)
    degeneracies: List[str] = field(default_factory=list)
    _done: set = field(default_factory=set)

    def edges_of_kind(self, kind: str) -> List[NetEdge]:
        return [e for e in self.edges if e.kind == kind]

    def nodes_of_kind(self, kind: str) -> List[NetNode]:
        return [n for n in self.nodes if n.kind == kind]

    def cycle_rank(self, kind: Optional[str] = None) -> int:
        """First Betti number of the subgraph made of ``kind`` edges."""
        edges = self.edges if kind is None else self.edges_of_kind(kind)
        verts = {x for e in edges for x in (e.src, e.dst)}
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = len(verts)
        for e in edges:
            a, b = find(e.src), find(e.dst)
            if a != b:
                parent[a] = b
                comps -= 1
        return len(edges) - len(verts) + comps


def _locate_on_edge(rg: ReebGraph, mesh: TetField, e: int, t: Fraction) -> ReebPoint:
    a, b = mesh.edges[e].tolist()
    return rg.locate(((a, b), (1 - t, t)))


def _init_from_structure(net: ReebSpaceNet):
    md = net.mdrg
    mesh, rg1 = md.mesh, md.rg1
    dp_node = {}
    for n in rg1.nodes:
        if n.reason == "C3-double-point":
            dp_node[n.key] = n.id
    for v in md.jstruct.vertices:
        if v.kind == "projected-jacobi-vertex":
            prov = {"jacobi_vertex": v.preimage}
            net.nodes.append(NetNode(v.id, v.point, "jacobi-vertex", prov))
            net.omega1[v.id] = rg1.locate_vertex(v.preimage)
            net.omega2[v.id] = net.rg_f2.locate_vertex(v.preimage)
        else:
            rec = v.preimage
            prov = {"jacobi_edges": list(rec.edges), "x": list(rec.x), "y": list(rec.y)}
            net.nodes.append(NetNode(v.id, v.point, "double-point", prov))
            nid = dp_node.get(rec.reeb_point.key)
            net.omega1[v.id] = ReebPoint(None, nid, rec.point[0], rec.reeb_point.key) \
                if nid is not None else rec.reeb_point
            net.omega2[v.id] = _locate_on_edge(net.rg_f2, mesh, *rec.x)
    for e in md.jstruct.edges:
        net.edges.append(NetEdge(e.u, e.v, "jacobi"))


def jacobi_set_point(mdrg: Mdrg, arc: int, node: int) -> Tuple[int, Fraction]:
    """``(jacobi edge, parameter)`` of an rg2 node of ``arc``.

    The parameter solves f1 = representative value on the witness edge.
    """
    rec = mdrg.arcs[arc]
    if node not in rec.witnesses:
        raise NetConsistencyError(f"rg2 node {node} of arc {arc} has no Jacobi witness")
    e, _ = rec.witnesses[node]
    t = edge_parameter(mdrg.mesh, e, rec.level.value)
    if not 0 < t < 1:
        raise NetConsistencyError(
            f"witness edge {e} does not cross level {rec.level.value} inside the edge")
    return e, t


def embed_reeb_graph(net: ReebSpaceNet, mdrg: Mdrg, arc: int) -> None:
    """Embed the rg2 of ``arc``; calling it again is a no-op."""
    if arc in net._done:
        return
    rec = mdrg.arcs[arc]
    mesh = mdrg.mesh
    js_edges = mdrg.jstruct
    local: Dict[int, int] = {}
    for n in rec.rg2.nodes:
        e, t = jacobi_set_point(mdrg, arc, n.id)
        key = (e, t)
        if key in net.embedded:
            other = net.nodes[net.embedded[key]]
            net.degeneracies.append(
                f"rg2 node {n.id} of arc {arc} coincides with net node {other.id}")
            local[n.id] = other.id
            continue
        nid = len(net.nodes)
        point = edge_point(mesh, e, t)
        frag = js_edges.fragment_at(e, t)
        prov = {"jacobi_edge": e, "t": t, "structure_edge": frag,
                "rg1_arc": arc, "rg2_node": n.id}
        net.nodes.append(NetNode(nid, point, "embedded-rg2-node", prov))
        net.embedded[key] = nid
        net.omega1[nid] = rec.representative
        net.omega2[nid] = _locate_on_edge(net.rg_f2, mesh, e, t)
        local[n.id] = nid
    for a in rec.rg2.arcs:
        net.edges.append(NetEdge(local[a.lo], local[a.hi], "reeb-arc"))
    net._done.add(arc)


def build_net(mdrg: Mdrg) -> ReebSpaceNet:
    net = ReebSpaceNet(mdrg, ReebGraph.from_tetfield(mdrg.mesh, "f2"))
    _init_from_structure(net)
    for aid in sorted(mdrg.arcs):
        embed_reeb_graph(net, mdrg, aid)
    return net


def compute_reeb_space(mesh: TetField, force: bool = False) -> ReebSpaceNet:
    """Jacobi set, Jacobi structure, MDRG and the embedded net."""
    return build_net(compute_mdrg(mesh, force=force))


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def net_violations(net: ReebSpaceNet) -> List[str]:
    """Structural problems of the net (empty when it is sound)."""
    out = []
    md = net.mdrg
    js = md.jstruct
    for n in net.nodes_of_kind("embedded-rg2-node"):
        p = n.provenance
        f = js.edges[p["structure_edge"]]
        lo, hi = min(f.t0, f.t1), max(f.t0, f.t1)
        if f.source != p["jacobi_edge"] or not lo < p["t"] < hi:
            out.append(f"node {n.id} is not inside structure edge {p['structure_edge']}")
        if n.point[0] != md.arcs[p["rg1_arc"]].level.value:
            out.append(f"node {n.id} is not on its representative level")
        if n.point[1] != md.arcs[p["rg1_arc"]].contour.f2[
                md.arcs[p["rg1_arc"]].rg2.nodes[p["rg2_node"]].vertex]:
            out.append(f"node {n.id} has the wrong f2 value")
    for e in net.edges_of_kind("reeb-arc"):
        a, b = net.nodes[e.src], net.nodes[e.dst]
        if a.kind != "embedded-rg2-node" or b.kind != "embedded-rg2-node":
            out.append(f"reeb-arc {e} touches a non-embedded node")
            continue
        if a.provenance["rg1_arc"] != b.provenance["rg1_arc"]:
            out.append(f"reeb-arc {e} joins two representatives")
        if a.point[0] != b.point[0]:
            out.append(f"reeb-arc {e} has unequal f1 ends")
        if not a.point[1] < b.point[1]:
            out.append(f"reeb-arc {e} is not increasing in f2")
        if net.omega1[a.id] != net.omega1[b.id]:
            out.append(f"reeb-arc {e} has two omega1 values")
    return out


def omega2_violations(net: ReebSpaceNet) -> List[str]:
    """Double points whose two witnesses land on different f2 contours."""
    out = []
    mesh = net.mdrg.mesh
    for n in net.nodes_of_kind("double-point"):
        x = _locate_on_edge(net.rg_f2, mesh, *n.provenance["x"])
        y = _locate_on_edge(net.rg_f2, mesh, *n.provenance["y"])
        if x != y or x != net.omega2[n.id]:
            out.append(f"double point {n.id}: omega2 {x} vs {y}")
    return out


# ---------------------------------------------------------------------------
# Fiber component counts from the MDRG
# ---------------------------------------------------------------------------

def query_fiber_components_at(mdrg: Mdrg, r) -> int:
    """Number of fiber components over the range point ``r = (r1, r2)``.

    Each arc of the f1 graph at level ``r1`` contributes the number of
    points of its rg2 at ``r2``.  The representative rg2 is carried to
    ``r1`` by moving each node along its Jacobi path.

    Raises
    ------
    GenericityError
        When ``r1`` or ``r2`` hits a node value.
    """
    r1, r2 = Fraction(r[0]), Fraction(r[1])
    mesh = mdrg.mesh
    sv = sorted_f1(mesh)
    if r1 < sv[0] or r1 > sv[-1]:
        return 0
    lvl = level_at(sv, r1)
    rg = mdrg.rg1
    k = lvl.key
    for n in rg.nodes:
        if n.key == k:
            raise GenericityError(f"f1 = {r1} is a node value of the f1 graph", witness=n.id)
    total = 0
    for aid in rg.arcs_at(lvl):
        rec = mdrg.arcs[aid]
        vals = {}
        for nid, (e, _) in rec.witnesses.items():
            e2 = follow_to_level(mdrg.js, e, lvl.cut)
            t = edge_parameter(mesh, e2, r1)
            vals[nid] = edge_point(mesh, e2, t)[1]
        for a in rec.rg2.arcs:
            lo, hi = vals[a.lo], vals[a.hi]
            if lo == r2 or hi == r2:
                raise GenericityError(f"f2 = {r2} is a node value on arc {aid}", witness=aid)
            if lo < r2 < hi:
                total += 1
    return total
