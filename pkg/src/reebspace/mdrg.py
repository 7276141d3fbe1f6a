"""Multi-dimensional Reeb graph.

The Reeb graph of f1 is augmented at every point where the Reeb graph of
f2 restricted to a contour can change: critical points of f1 (already
nodes), extrema of f1 along the Jacobi set, and double points of the Jacobi
structure.  Each arc of the augmented graph then gets one representative
contour and the Reeb graph of f2 on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .contour import SurfaceMesh, extract_contour, sorted_f1
from .jacobi import JacobiSet, compute_jacobi_set, jacobi_branch_points, jacobi_extrema
from .jacobi_structure import JacobiStructure, compute_jacobi_structure
from .mesh import TetField
from .reebgraph import InsertPoint, Level, ReebGraph, ReebPoint, arc_levels, augment, \
    level_between, level_near, reeb_graphs_topologically_equivalent

REASONS = ("C1-critical-f1", "C2-jacobi-extremum", "C3-double-point", "jacobi-branch")


class SimplicityError(RuntimeError):
    """The Jacobi set is not a 1-manifold and force was not given."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class TopoChangePoint:
    point: ReebPoint
    reason: str
    witness: object


@dataclass
class ArcRecord:
    """Representative data of one arc of the augmented f1 graph.

    ``witnesses`` maps each rg2 node to ``(jacobi edge, parameter)``.
    """

    arc: int
    level: Level
    contour: SurfaceMesh
    rg2: ReebGraph
    witnesses: Dict[int, Tuple[int, Fraction]] = field(default_factory=dict)

    @property
    def representative(self) -> ReebPoint:
        return ReebPoint(self.arc, None, self.level.value, self.level.key)


@dataclass
class Mdrg:
    mesh: TetField
    js: JacobiSet
    jstruct: JacobiStructure
    rg1_base: ReebGraph
    rg1: ReebGraph
    points: List[TopoChangePoint]
    arcs: Dict[int, ArcRecord]
    inconsistencies: List[str] = field(default_factory=list)
    forced: bool = False

    def node_bound(self) -> int:
        """``c_f1 + j_min + j_max + j_v``."""
        j_min, j_max = jacobi_extrema(self.js, self.mesh, self.rg1_base)
        return self.rg1_base.n_nodes + len(j_min) + len(j_max) + self.js.j_v


def points_of_topological_change(mesh: TetField, js: JacobiSet, jstruct: JacobiStructure,
                                 rg1: ReebGraph, include_branches: bool = True
                                 ) -> List[TopoChangePoint]:
    """Points of ``rg1`` where the restricted f2 graphs may change.

    Critical points of f1 are nodes of ``rg1`` already and are not listed.
    With ``include_branches`` the non-manifold Jacobi vertices are added
    too; they only exist when the simplicity assumption fails.
    """
    out: List[TopoChangePoint] = []
    j_min, j_max = jacobi_extrema(js, mesh, rg1)
    for v in sorted(j_min + j_max):
        out.append(TopoChangePoint(rg1.locate_vertex(v), "C2-jacobi-extremum", v))
    for rec in jstruct.crossings:
        out.append(TopoChangePoint(rec.reeb_point, "C3-double-point", rec))
    if include_branches:
        for v in jacobi_branch_points(js, mesh, rg1):
            out.append(TopoChangePoint(rg1.locate_vertex(v), "jacobi-branch", v))
    return out


def augment_reeb_graph(rg1: ReebGraph, points: List[TopoChangePoint]) -> ReebGraph:
    ins = []
    for p in points:
        if p.point.is_node:
            continue
        vertex = p.witness if isinstance(p.witness, int) else None
        ins.append(InsertPoint(p.point.arc, p.point.key, p.reason, p.witness, vertex))
    return augment(rg1, ins)


def representative_point(rg1: ReebGraph, arc: int) -> ReebPoint:
    """Point of ``arc`` at (or next to) the midpoint of its value span."""
    a = rg1.arcs[arc]
    lvl = level_between(rg1.sorted_values(), rg1.nodes[a.lo].key, rg1.nodes[a.hi].key)
    return ReebPoint(arc, None, lvl.value, lvl.key)


def _level_of(point: ReebPoint) -> Level:
    return Level((point.key[0] + 1) // 2, point.value)


def contour_of_arc(mesh: TetField, rg1: ReebGraph, arc: int, level: Level,
                   js: Optional[JacobiSet] = None) -> SurfaceMesh:
    """The contour component at ``level`` that maps into ``arc``."""
    for comp in extract_contour(mesh, level, js):
        if rg1.locate_edge(comp.edge[0], level).arc == arc:
            return comp
    raise ValueError(f"no contour component at {level} maps to arc {arc}")


def rg2_witnesses(contour: SurfaceMesh, rg2: ReebGraph):
    """Jacobi witnesses of every rg2 node, and the nodes lacking one."""
    wit, missing = {}, []
    for n in rg2.nodes:
        v = n.vertex
        if contour.on_jacobi_edge[v]:
            wit[n.id] = (contour.edge[v], contour.t[v])
        else:
            missing.append(n.id)
    return wit, missing


def compute_mdrg(mesh: TetField, js: Optional[JacobiSet] = None,
                 jstruct: Optional[JacobiStructure] = None,
                 rg1: Optional[ReebGraph] = None, force: bool = False) -> Mdrg:
    """Augmented f1 graph plus one restricted f2 graph per arc.

    Raises
    ------
    SimplicityError
        If the Jacobi set is not a 1-manifold and ``force`` is false.
    """
    if js is None:
        js = compute_jacobi_set(mesh)
    if not force and not (js.is_simple() and js.is_manifold()):
        bad = js.non_simple or js.degree_violations()
        raise SimplicityError("the Jacobi set is not a 1-manifold; pass force to continue",
                              witness=bad[:8])
    if rg1 is None:
        rg1 = ReebGraph.from_tetfield(mesh, "f1")
    if jstruct is None:
        jstruct = compute_jacobi_structure(mesh, js, rg1)
    points = points_of_topological_change(mesh, js, jstruct, rg1, include_branches=force)
    rga = augment_reeb_graph(rg1, points)
    out = Mdrg(mesh, js, jstruct, rg1, rga, points, {}, forced=force)
    for a in rga.arcs:
        rep = representative_point(rga, a.id)
        lvl = _level_of(rep)
        contour = contour_of_arc(mesh, rga, a.id, lvl, js)
        rg2 = ReebGraph.from_surface(contour)
        wit, missing = rg2_witnesses(contour, rg2)
        for n in missing:
            out.inconsistencies.append(
                f"arc {a.id}: rg2 node {n} sits on mesh edge "
                f"{contour.edge[rg2.nodes[n].vertex]}, which is not a Jacobi edge")
        out.arcs[a.id] = ArcRecord(a.id, lvl, contour, rg2, wit)
    return out


# ---------------------------------------------------------------------------
# Sampling along arcs
# ---------------------------------------------------------------------------

def rg2_at(mdrg: Mdrg, arc: int, level: Level):
    """``(contour, rg2)`` of ``arc`` at another level of the same arc."""
    c = contour_of_arc(mdrg.mesh, mdrg.rg1, arc, level, mdrg.js)
    return c, ReebGraph.from_surface(c)


def within_arc_stability(mdrg: Mdrg, samples: int = 3) -> List[str]:
    """Arcs whose rg2 differs between interior sample levels."""
    bad = []
    sv = sorted_f1(mdrg.mesh)
    for aid in sorted(mdrg.arcs):
        a = mdrg.rg1.arcs[aid]
        levels = arc_levels(sv, mdrg.rg1.nodes[a.lo].key, mdrg.rg1.nodes[a.hi].key, samples)
        graphs = [rg2_at(mdrg, aid, lvl)[1] for lvl in levels]
        for i in range(len(graphs)):
            for j in range(i + 1, len(graphs)):
                if not reeb_graphs_topologically_equivalent(graphs[i], graphs[j]):
                    bad.append(f"arc {aid}: levels {levels[i].value} and {levels[j].value} differ")
    return bad


@dataclass
class NodeEffect:
    node: int
    reason: str
    below: ReebGraph
    above: ReebGraph
    outcome: str  # "birth" | "death" | "swap" | "regroup" | "none"
    created: Tuple[str, ...] = ()


def _near(mdrg: Mdrg, arc: int, key) -> Level:
    a = mdrg.rg1.arcs[arc]
    lo, hi = mdrg.rg1.nodes[a.lo].key, mdrg.rg1.nodes[a.hi].key
    return level_near(sorted_f1(mdrg.mesh), lo, hi, key[1])


def _order_sign(contour: SurfaceMesh, e: int, e2: int) -> int:
    x, y = contour.vertex_of_edge[e], contour.vertex_of_edge[e2]
    r = contour.rank()
    return 1 if r[x] < r[y] else -1


def node_effect(mdrg: Mdrg, node: int) -> NodeEffect:
    """Compare the rg2 just below and just above an inserted node."""
    rg = mdrg.rg1
    n = rg.nodes[node]
    (down,), (up,) = rg.down_arcs(node), rg.up_arcs(node)
    lb = _near(mdrg, down, n.key)
    la = _near(mdrg, up, n.key)
    cb, gb = rg2_at(mdrg, down, lb)
    ca, ga = rg2_at(mdrg, up, la)
    if gb.n_nodes != ga.n_nodes:
        outcome = "birth" if ga.n_nodes > gb.n_nodes else "death"
        created = _created_types(mdrg, n, cb, gb, ca, ga, outcome)
        return NodeEffect(node, n.reason, gb, ga, outcome, created)
    if n.reason == "C3-double-point":
        rec = n.witness
        e, e2 = rec.edges
        if _order_sign(cb, e, e2) != _order_sign(ca, e, e2):
            return NodeEffect(node, n.reason, gb, ga, "swap")
    if not reeb_graphs_topologically_equivalent(gb, ga):
        return NodeEffect(node, n.reason, gb, ga, "regroup")
    return NodeEffect(node, n.reason, gb, ga, "none")


def _created_types(mdrg, n, cb, gb, ca, ga, outcome) -> Tuple[str, ...]:
    """Types of the two rg2 nodes created (or destroyed) at a Jacobi extremum.

    They are the nodes sitting on the two Jacobi edges at the extremum
    vertex, read on the contour where they exist.
    """
    v = n.witness if isinstance(n.witness, int) else None
    if v is None:
        return ()
    contour, g = (ca, ga) if outcome == "birth" else (cb, gb)
    types = []
    for e in mdrg.js.adjacency.get(v, ()):
        cv = contour.vertex_of_edge.get(e)
        if cv is None or cv not in g.vertex_node:
            continue
        types.append(g.nodes[g.vertex_node[cv]].type)
    return tuple(sorted(types))


def across_node_changes(mdrg: Mdrg) -> List[NodeEffect]:
    """Effects of every inserted node (C2, C3 and branch points)."""
    out = []
    for n in mdrg.rg1.nodes:
        if n.reason == "C1":
            continue
        out.append(node_effect(mdrg, n.id))
    return out


def index_lemma_violations(effects: List[NodeEffect]) -> List[str]:
    """Births and deaths whose node pair is not {minimum, down-fork} or
    {up-fork, maximum}."""
    ok = {("down-fork", "minimum"), ("maximum", "up-fork")}
    bad = []
    for ef in effects:
        if ef.reason != "C2-jacobi-extremum" or ef.outcome not in ("birth", "death"):
            continue
        if ef.created not in ok:
            bad.append(f"node {ef.node}: {ef.outcome} of {ef.created}")
    return bad


def minimality_report(effects: List[NodeEffect]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for ef in effects:
        k = f"{ef.reason}:{ef.outcome}"
        out[k] = out.get(k, 0) + 1
    return out
