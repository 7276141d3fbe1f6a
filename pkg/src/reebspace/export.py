"""JSON, DOT and OBJ exports.

Every export is deterministic: nodes are sorted by their range point (then
kind and provenance) and renumbered densely from 0, edges are sorted by the
new ids.  Exact rationals are written as ``"p/q"`` strings next to the
float values.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Tuple

from .jacobi import JacobiSet
from .jacobi_structure import JacobiStructure
from .mdrg import Mdrg
from .reeb_space import ReebSpaceNet
from .reebgraph import ReebGraph

FORMATS = ("json", "dot", "obj")


class UsageError(ValueError):
    """The artifact cannot be exported in the requested format."""


def _plain(x):
    """JSON-safe copy of provenance values."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def _dumps(doc) -> bytes:
    return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")


def _point(p) -> Tuple[List[float], List[str]]:
    return [float(p[0]), float(p[1])], [str(Fraction(p[0])), str(Fraction(p[1]))]


def _sorted_nodes(items):
    """``items``: (old id, point, kind, provenance).  Returns (old -> new, rows)."""
    rows = []
    for old, p, kind, prov in items:
        prov = _plain(prov)
        rows.append((Fraction(p[0]), Fraction(p[1]), kind, json.dumps(prov, sort_keys=True),
                     old, p, prov))
    rows.sort(key=lambda r: r[:4])
    remap = {r[4]: i for i, r in enumerate(rows)}
    return remap, rows


def _edge_list(edges, remap):
    out = sorted((remap[s], remap[d], k, json.dumps(_plain(p), sort_keys=True), p)
                 for s, d, k, p in edges)
    return [dict({"src": s, "dst": d, "kind": k}, **({"provenance": _plain(p)} if p else {}))
            for s, d, k, _, p in out]


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------

def graph_doc(rg: ReebGraph) -> dict:
    """Reeb graph: nodes ordered by their sweep key."""
    order = sorted(range(len(rg.nodes)), key=lambda i: (rg.nodes[i].key[0], Fraction(rg.nodes[i].value)))
    remap = {old: i for i, old in enumerate(order)}
    nodes = []
    for old in order:
        n = rg.nodes[old]
        v = Fraction(n.value)
        row = {"id": remap[old], "kind": n.type, "value": float(v), "exact": str(v),
               "vertex": n.vertex, "down": n.down, "up": n.up}
        if n.reason != "C1":
            row["reason"] = n.reason
        if n.degenerate:
            row["degenerate"] = True
        nodes.append(row)
    edges = sorted((remap[a.lo], remap[a.hi]) for a in rg.arcs)
    return {"type": "reeb-graph", "field": "f1" if rg.field == 0 else "f2",
            "nodes": nodes, "edges": [{"src": s, "dst": d, "kind": "arc"} for s, d in edges]}


def jacobi_set_doc(js: JacobiSet) -> dict:
    m = js.mesh
    edges = []
    for e in js.edges:
        a, b = m.edges[e].tolist()
        edges.append({"edge": e, "src": a, "dst": b, "kind": js.kind[e],
                      "simple": js.simple[e], "lower_arcs": js.lower_arcs[e]})
    return {"type": "jacobi-set", "j_e": js.j_e, "j_v": js.j_v,
            "vertices": [{"vertex": v, "degree": js.degree(v)} for v in js.vertices],
            "edges": edges, "non_simple": js.non_simple,
            "degree_violations": js.degree_violations()}


def _structure_items(js: JacobiStructure):
    items = []
    for v in js.vertices:
        if v.kind == "projected-jacobi-vertex":
            prov = {"jacobi_vertex": v.preimage}
        else:
            rec = v.preimage
            prov = {"jacobi_edges": list(rec.edges), "x": list(rec.x), "y": list(rec.y),
                    "same_component": rec.same_component}
        items.append((v.id, v.point, v.kind, prov))
    edges = [(e.u, e.v, "jacobi", {"jacobi_edge": e.source, "t0": e.t0, "t1": e.t1})
             for e in js.edges]
    return items, edges


def _nodes_json(rows, remap):
    out = []
    for r in rows:
        f, exact = _point(r[5])
        out.append({"id": remap[r[4]], "kind": r[2], "f": f, "exact": exact, "provenance": r[6]})
    return out


def structure_doc(js: JacobiStructure) -> dict:
    items, edges = _structure_items(js)
    remap, rows = _sorted_nodes(items)
    return {"type": "jacobi-structure", "nodes": _nodes_json(rows, remap),
            "edges": _edge_list(edges, remap)}


def net_doc(net: ReebSpaceNet) -> dict:
    items = [(n.id, n.point, n.kind, n.provenance) for n in net.nodes]
    remap, rows = _sorted_nodes(items)
    nodes = _nodes_json(rows, remap)
    by_new = {remap[n.id]: n.id for n in net.nodes}
    for row in nodes:
        old = by_new[row["id"]]
        p1, p2 = net.omega1.get(old), net.omega2.get(old)
        row["omega1"] = _reeb_point(p1)
        row["omega2"] = _reeb_point(p2)
    edges = _edge_list([(e.src, e.dst, e.kind, None) for e in net.edges], remap)
    return {"type": "reeb-space-net", "nodes": nodes, "edges": edges,
            "degeneracies": list(net.degeneracies)}


def _reeb_point(p):
    if p is None:
        return None
    v = Fraction(p.value)
    return {"arc": p.arc, "node": p.node, "value": float(v), "exact": str(v)}


def mdrg_doc(md: Mdrg) -> dict:
    rg1 = graph_doc(md.rg1)
    order = sorted(range(len(md.rg1.nodes)),
                   key=lambda i: (md.rg1.nodes[i].key[0], Fraction(md.rg1.nodes[i].value)))
    remap = {old: i for i, old in enumerate(order)}
    arcs = []
    for aid in sorted(md.arcs, key=lambda a: (remap[md.rg1.arcs[a].lo], remap[md.rg1.arcs[a].hi], a)):
        rec = md.arcs[aid]
        a = md.rg1.arcs[aid]
        g = graph_doc(rec.rg2)
        g_order = sorted(range(len(rec.rg2.nodes)),
                         key=lambda i: (rec.rg2.nodes[i].key[0], Fraction(rec.rg2.nodes[i].value)))
        g_remap = {old: i for i, old in enumerate(g_order)}
        wit = {str(g_remap[k]): [e, str(t)] for k, (e, t) in rec.witnesses.items()}
        lv = Fraction(rec.level.value)
        arcs.append({"src": remap[a.lo], "dst": remap[a.hi],
                     "level": float(lv), "level_exact": str(lv),
                     "contour_genus": rec.contour.genus(), "rg2": g,
                     "witnesses": dict(sorted(wit.items(), key=lambda kv: int(kv[0])))})
    return {"type": "mdrg", "forced": md.forced, "rg1": rg1, "arcs": arcs,
            "inconsistencies": list(md.inconsistencies)}


def to_json(artifact) -> bytes:
    if isinstance(artifact, ReebGraph):
        return _dumps(graph_doc(artifact))
    if isinstance(artifact, JacobiSet):
        return _dumps(jacobi_set_doc(artifact))
    if isinstance(artifact, JacobiStructure):
        return _dumps(structure_doc(artifact))
    if isinstance(artifact, Mdrg):
        return _dumps(mdrg_doc(artifact))
    if isinstance(artifact, ReebSpaceNet):
        return _dumps(net_doc(artifact))
    if isinstance(artifact, dict):
        return _dumps(_plain(artifact))
    raise UsageError(f"cannot export {type(artifact).__name__} as json")


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

_STYLE = {"jacobi": "dashed", "reeb-arc": "solid", "arc": "solid"}


def _dot(name: str, nodes: List[dict], edges: List[dict], label) -> bytes:
    out = [f"graph {name} {{"]
    for n in nodes:
        out.append(f'  n{n["id"]} [label="{label(n)}"];')
    for e in edges:
        out.append(f'  n{e["src"]} -- n{e["dst"]} [style={_STYLE[e["kind"]]}, class="{e["kind"]}"];')
    out.append("}")
    return ("\n".join(out) + "\n").encode("utf-8")


def to_dot(artifact) -> bytes:
    if isinstance(artifact, Mdrg):
        artifact = artifact.rg1
    if isinstance(artifact, ReebGraph):
        d = graph_doc(artifact)
        return _dot("reeb_graph", d["nodes"], d["edges"],
                    lambda n: f'{n["kind"]} {n["value"]:.6g}' + (f' {n["reason"]}' if "reason" in n else ""))
    if isinstance(artifact, JacobiStructure):
        d = structure_doc(artifact)
    elif isinstance(artifact, ReebSpaceNet):
        d = net_doc(artifact)
    else:
        raise UsageError(f"cannot export {type(artifact).__name__} as dot")
    return _dot("net", d["nodes"], d["edges"],
                lambda n: f'{n["kind"]} ({n["f"][0]:.6g}, {n["f"][1]:.6g})')


# ---------------------------------------------------------------------------
# OBJ
# ---------------------------------------------------------------------------

OBJ_OFFSET = 1e-3


def to_obj(artifact) -> bytes:
    """Polylines in the range plane; coincident nodes are lifted in z."""
    if isinstance(artifact, JacobiStructure):
        d = structure_doc(artifact)
    elif isinstance(artifact, ReebSpaceNet):
        d = net_doc(artifact)
    else:
        raise UsageError(f"cannot export {type(artifact).__name__} as obj")
    out = ["# range-plane polylines: v r1 r2 z"]
    seen: Dict[Tuple[str, str], int] = {}
    for n in d["nodes"]:
        k = tuple(n["exact"])
        z = OBJ_OFFSET * seen.get(k, 0)
        seen[k] = seen.get(k, 0) + 1
        out.append(f'v {n["f"][0]!r} {n["f"][1]!r} {z!r}')
    for kind in ("jacobi", "reeb-arc"):
        group = [e for e in d["edges"] if e["kind"] == kind]
        if not group:
            continue
        out.append(f"g {kind}")
        for e in group:
            out.append(f'l {e["src"] + 1} {e["dst"] + 1}')
    return ("\n".join(out) + "\n").encode("utf-8")


def export(artifact, fmt: str) -> bytes:
    if fmt == "json":
        return to_json(artifact)
    if fmt == "dot":
        return to_dot(artifact)
    if fmt == "obj":
        return to_obj(artifact)
    raise UsageError(f"unknown format {fmt!r}; expected one of {FORMATS}")
