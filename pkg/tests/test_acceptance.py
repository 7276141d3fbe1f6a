"""End-to-end acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line; the lines are repeated in the
terminal summary.  Datasets that cannot be constructed count as failures
of the criterion that names them.
"""
from __future__ import annotations

import time

import pytest

from reebspace.checks import check_euler, double_point_bookkeeping, genus_loop_mismatches, \
    no_effect_nodes, oracle_mismatches
from reebspace.generators import DEFAULT_RESOLUTION, expectations, generate
from reebspace.mdrg import across_node_changes, compute_mdrg, index_lemma_violations, \
    within_arc_stability
from reebspace.jacobi import monotonicity_violations
from reebspace.reeb_space import build_net, net_violations, omega2_violations

RESULTS: list = []

ORACLE_DATASETS = [
    ("s4boundary", 1, "linear"), ("s4boundary", 1, "cosine"),
    ("torus3", 2, "linear"), ("torus3", 2, "cosine"),
    ("torus3", 4, "linear"), ("torus3", 4, "cosine"),
    ("torus3", DEFAULT_RESOLUTION["fig1"], "fig1"),
    ("torus3", DEFAULT_RESOLUTION["fig2"], "fig2"),
    ("torus3", DEFAULT_RESOLUTION["fig3"], "fig3"),
]
SIMPLE_DATASETS = [("s4boundary", 1, "linear"), ("s4boundary", 1, "cosine"),
                   ("torus3", 4, "cosine"), ("torus3", 8, "cosine"),
                   ("torus3", DEFAULT_RESOLUTION["fig1"], "fig1")]

_BUILT: dict = {}


def _name(key) -> str:
    shape, res, field = key
    return f"{shape}/{field}" if shape == "s4boundary" else f"{shape}-R{res}/{field}"


def built(key):
    """``(mesh, mdrg, net)`` or the exception raised while building."""
    if key not in _BUILT:
        try:
            mesh = generate(*key)
            md = compute_mdrg(mesh, force=True)
            _BUILT[key] = (mesh, md, build_net(md))
        except Exception as exc:  # reported by the criterion
            _BUILT[key] = exc
    return _BUILT[key]


def report(n: int, title: str, problems, detail: str = "") -> None:
    ok = not problems
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}"
    if detail:
        line += f" [{detail}]"
    if problems:
        line += f" -- {len(problems)} problem(s): " + "; ".join(map(str, problems[:3]))
    RESULTS.append(line)
    print("\n" + line)
    assert ok, line


def _each(datasets, fn):
    """Run ``fn(mesh, md, net)`` on every dataset; collect problems."""
    probs, skipped = [], []
    for key in datasets:
        b = built(key)
        if isinstance(b, Exception):
            skipped.append(_name(key))
            continue
        probs += [f"{_name(key)}: {p}" for p in fn(*b)]
    return probs, skipped


def _skip_note(skipped) -> str:
    return f"not constructible: {', '.join(skipped)}" if skipped else ""


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    probs, compared = [], 0
    for key in ORACLE_DATASETS:
        b = built(key)
        if isinstance(b, Exception):
            probs.append(f"{_name(key)}: {type(b).__name__}: {b}")
            continue
        bad, n = oracle_mismatches(b[1], samples=100, seed=0)
        compared += n
        probs += [f"{_name(key)}: {p}" for p in bad]
        if n < 100:
            probs.append(f"{_name(key)}: only {n} of 100 values were regular")
    dt = time.perf_counter() - t0
    if dt >= 60:
        probs.append(f"took {dt:.1f}s, budget 60s")
    report(1, "MDRG fiber counts equal the oracle", probs, f"{compared} values, {dt:.1f}s")


def test_criterion_2_within_arc_stability():
    probs, skipped = _each(ORACLE_DATASETS, lambda m, md, net: within_arc_stability(md, 3))
    report(2, "rg2 stable inside every augmented arc", probs, _skip_note(skipped))


def _effects(md):
    if not hasattr(md, "_effects"):
        md._effects = across_node_changes(md)
    return md._effects


def test_criterion_3_across_node_change():
    counts = {}

    def fn(m, md, net):
        eff = _effects(md)
        for ef in eff:
            if ef.reason in ("C2-jacobi-extremum", "C3-double-point"):
                counts[ef.outcome] = counts.get(ef.outcome, 0) + 1
        return no_effect_nodes(eff)

    probs, skipped = _each(ORACLE_DATASETS, fn)
    detail = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    report(3, "every C2/C3 node changes rg2", probs,
           "; ".join(x for x in (detail, _skip_note(skipped)) if x))


def test_criterion_4_index_lemma():
    key = ("torus3", DEFAULT_RESOLUTION["fig2"], "fig2")
    b = built(key)
    if isinstance(b, Exception):
        report(4, "index lemma at C2 births", [f"{_name(key)}: {b}"])
    eff = _effects(b[1])
    births = [ef for ef in eff if ef.reason == "C2-jacobi-extremum" and ef.outcome == "birth"]
    probs = [p for p in index_lemma_violations(eff) if "birth" in p]
    if not births:
        probs.append("no C2 birth occurs in the dataset")
    report(4, "index lemma at C2 births", probs, f"{len(births)} births")


def test_criterion_5_jacobi_manifold_monotone():
    def fn(m, md, net):
        js = md.js
        out = [f"vertex {v} has degree {js.degree(v)}" for v in js.degree_violations()]
        out += [f"edge {e} flat in {f}" for e, f in monotonicity_violations(js)]
        out += [f"edge {e} is not simple" for e in js.non_simple]
        return out

    probs, skipped = _each(SIMPLE_DATASETS, fn)
    probs += [f"{s}: not constructible" for s in skipped]
    report(5, "Jacobi set is a monotone 1-manifold on simple datasets", probs,
           f"{len(SIMPLE_DATASETS)} datasets")


def test_criterion_6_double_points():
    key = ("torus3", DEFAULT_RESOLUTION["fig3"], "fig3")
    b = built(key)
    if isinstance(b, Exception):
        report(6, "double-point bookkeeping", [f"{_name(key)}: {b}"])
    md = b[1]
    want = expectations("fig3")["double_points"]
    dps = md.jstruct.double_point_ids()
    probs = double_point_bookkeeping(md.jstruct, md.js)
    if len(dps) != want:
        probs.append(f"{len(dps)} double points, designed {want}")
    report(6, "double-point bookkeeping", probs,
           f"{len(dps)} degree-4 vertices, {len(md.jstruct.edges)} edges, j_e={md.js.j_e}")


def test_criterion_7_net_invariants():
    probs, skipped = _each(ORACLE_DATASETS,
                           lambda m, md, net: net_violations(net) + omega2_violations(net))
    report(7, "net structural invariants", probs, _skip_note(skipped))


def test_criterion_8_euler_audits():
    def fn(m, md, net):
        r = check_euler(m)
        return r.problems + genus_loop_mismatches(md)

    probs, skipped = _each(ORACLE_DATASETS + SIMPLE_DATASETS[3:4], fn)
    report(8, "Euler index sums and contour genus", probs, _skip_note(skipped))


@pytest.mark.parametrize("field", ["cosine", "linear"])
def test_criterion_9_performance(field):
    times = {}
    for res in (4, 8):
        t0 = time.perf_counter()
        mesh = generate("torus3", res, field)
        build_net(compute_mdrg(mesh, force=True))
        times[res] = time.perf_counter() - t0
    factor = times[8] / times[4]
    probs = []
    if factor > 80:
        probs.append(f"R=4 -> R=8 factor {factor:.1f} > 80")
    if times[8] > 600:
        probs.append(f"R=8 took {times[8]:.0f}s > 600s")
    report(9, f"runtime growth on torus3/{field}", probs,
           f"R=4 {times[4]:.1f}s, R=8 {times[8]:.1f}s, factor {factor:.1f}")
