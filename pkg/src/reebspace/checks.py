"""Invariant suite run by ``reebspace check`` and by the tests.

Each check returns a :class:`CheckResult`; :func:`run_checks` runs them all
on one mesh and reports every failure instead of stopping at the first.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .fiber import fiber_components, sample_regular_values
from .jacobi import JacobiSet, monotonicity_violations
from .jacobi_structure import JacobiStructure
from .mdrg import Mdrg, across_node_changes, index_lemma_violations, within_arc_stability
from .mesh import GenericityError, TetField, validate_manifold
from .reeb_space import ReebSpaceNet, net_violations, omega2_violations, query_fiber_components_at
from .reebgraph import classify_all, euler_sum


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    problems: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail,
                "problems": self.problems[:20]}


def _result(name: str, problems: Sequence[str], detail: str = "") -> CheckResult:
    return CheckResult(name, not problems, detail, list(problems))


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------

def check_manifold(mesh: TetField) -> CheckResult:
    rep = validate_manifold(mesh)
    return _result("manifold", [f"{i.simplex} {i.index}: {i.condition}" for i in rep.issues])


def check_euler(mesh: TetField) -> CheckResult:
    """Alternating index sum of simple critical vertices equals chi = 0."""
    probs = []
    for fld in ("f1", "f2"):
        s = euler_sum(classify_all(mesh, fld))
        if s != mesh.euler_characteristic():
            probs.append(f"{fld}: index sum {s} != chi {mesh.euler_characteristic()}")
    return _result("euler-index-sum", probs)


def check_jacobi(js: JacobiSet) -> CheckResult:
    """Degree-2 vertices and strict monotonicity on every Jacobi edge."""
    probs = [f"vertex {v} has degree {js.degree(v)}" for v in js.degree_violations()]
    probs += [f"edge {e} is flat in {f}" for e, f in monotonicity_violations(js)]
    return _result("jacobi-manifold-monotone", probs,
                   f"j_e={js.j_e} j_v={js.j_v} non_simple={len(js.non_simple)}")


def double_point_bookkeeping(jstruct: JacobiStructure, js: JacobiSet) -> List[str]:
    deg = jstruct.degrees()
    dps = jstruct.double_point_ids()
    probs = [f"double point {v} has degree {deg[v]}" for v in dps if deg[v] != 4]
    want = js.j_e + 2 * len(dps)
    if len(jstruct.edges) != want:
        probs.append(f"{len(jstruct.edges)} structure edges, expected j_e + 2|DP| = {want}")
    return probs


def check_structure(jstruct: JacobiStructure, js: JacobiSet) -> CheckResult:
    return _result("double-point-bookkeeping", double_point_bookkeeping(jstruct, js),
                   f"double points={len(jstruct.double_point_ids())}")


def genus_loop_mismatches(md: Mdrg) -> List[str]:
    """Each representative contour has chi = 2 - 2g and an rg2 with g loops."""
    out = []
    for aid, rec in sorted(md.arcs.items()):
        c = rec.contour
        chi = c.euler_characteristic()
        if chi % 2 or chi > 2:
            out.append(f"arc {aid}: contour chi {chi} is not 2 - 2g")
        elif rec.rg2.betti1() != c.genus():
            out.append(f"arc {aid}: genus {c.genus()} but rg2 has {rec.rg2.betti1()} loops")
    return out


def no_effect_nodes(effects) -> List[str]:
    return [f"node {ef.node} ({ef.reason}): no change across the node" for ef in effects
            if ef.reason in ("C2-jacobi-extremum", "C3-double-point") and ef.outcome == "none"]


def node_bound_excess(md: Mdrg) -> List[str]:
    n, b = md.rg1.n_nodes, md.node_bound()
    return [f"{n} nodes > bound {b}"] if n > b else []


def oracle_mismatches(md: Mdrg, samples: int = 100, seed: int = 0,
                      jobs: int = 1) -> Tuple[List[str], int]:
    """Compare MDRG fiber counts with the brute-force oracle.

    Returns the mismatches and the number of values compared.  Values
    where the query hits a node value exactly are redrawn.
    """
    mesh = md.mesh
    values = sample_regular_values(mesh, md.js, samples, seed=seed)
    want = []
    for r in values:
        try:
            want.append(query_fiber_components_at(md, r))
        except GenericityError:
            want.append(None)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            got = list(ex.map(fiber_components, [mesh] * len(values), values,
                              chunksize=max(1, len(values) // (4 * jobs))))
    else:
        got = [fiber_components(mesh, r) for r in values]
    bad, n = [], 0
    for r, a, b in zip(values, want, got):
        if a is None:
            continue
        n += 1
        if a != b:
            bad.append(f"at {r}: mdrg {a}, oracle {b}")
    return bad, n


def rg2_loop_gain(md: Mdrg) -> bool:
    """Some node of the f1 graph has an rg2 with more loops above than below."""
    rg = md.rg1
    for n in rg.nodes:
        below = [md.arcs[a].rg2.betti1() for a in rg.down_arcs(n.id)]
        above = [md.arcs[a].rg2.betti1() for a in rg.up_arcs(n.id)]
        if below and above and max(above) > min(below):
            return True
    return False


def expectation_problems(md: Mdrg, net: ReebSpaceNet, effects, expect: dict) -> List[str]:
    """Designed signatures of the figure datasets."""
    probs = []
    if expect.get("rg2_loop_gain"):
        if not rg2_loop_gain(md):
            probs.append("no rg2 gains a loop across an f1 node")
        if net.cycle_rank("reeb-arc") < 1:
            probs.append("the reeb-arc edges of the net have no cycle")
    if expect.get("birth"):
        ok = {("down-fork", "minimum"), ("maximum", "up-fork")}
        if not any(ef.outcome == "birth" and ef.created in ok for ef in effects):
            probs.append("no birth of an rg2 arc with a {minimum, down-fork} or "
                         "{up-fork, maximum} pair")
    if "double_points" in expect:
        n = len(md.jstruct.double_point_ids())
        if n != expect["double_points"]:
            probs.append(f"{n} double points, designed {expect['double_points']}")
    return probs


# ---------------------------------------------------------------------------
# Whole suite
# ---------------------------------------------------------------------------

def run_checks(md: Mdrg, net: ReebSpaceNet, samples: int = 100, seed: int = 0,
               expect: Optional[dict] = None, jobs: int = 1) -> List[CheckResult]:
    mesh, js = md.mesh, md.js
    out = [check_manifold(mesh), check_euler(mesh)]
    simple = js.is_simple() and js.is_manifold()
    jr = check_jacobi(js)
    if not simple and md.forced:
        # acknowledged with --force: only flat edges still count as failures
        flat = [p for p in jr.problems if " is flat in " in p]
        jr = CheckResult(jr.name, not flat, jr.detail + " (forced: "
                         f"{len(js.degree_violations())} branch vertices acknowledged)", flat)
    out.append(jr)
    out.append(check_structure(md.jstruct, js))
    out.append(_result("reeb-graph-degrees", md.rg1_base.check_degrees()))
    out.append(_result("rg2-witnesses", md.inconsistencies))
    out.append(_result("within-arc-stability", within_arc_stability(md)))
    effects = across_node_changes(md)
    out.append(_result("across-node-change", no_effect_nodes(effects)))
    out.append(_result("index-lemma", index_lemma_violations(effects)))
    out.append(_result("contour-genus-loops", genus_loop_mismatches(md)))
    if simple:
        out.append(_result("node-bound", node_bound_excess(md)))
    out.append(_result("net-structure", net_violations(net)))
    out.append(_result("omega2-commutes", omega2_violations(net)))
    bad, n = oracle_mismatches(md, samples, seed, jobs)
    out.append(_result("oracle", bad, f"{n} values compared"))
    if expect:
        out.append(_result("designed-signature", expectation_problems(md, net, effects, expect)))
    return out


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
