from fractions import Fraction

import pytest

from reebspace.jacobi import compute_jacobi_set
from reebspace.jacobi_structure import (compute_jacobi_structure, double_points,
                                        range_segment_intersection)
from reebspace.reebgraph import ReebGraph

from conftest import dataset, mdrg_of


def structure(shape, R, field):
    m = dataset(shape, R, field)
    js = compute_jacobi_set(m)
    return m, js, compute_jacobi_structure(m, js, ReebGraph.from_tetfield(m, "f1"))


def test_segment_intersection_example():
    hit = range_segment_intersection(((0, 0), (1, 1)), ((0, 1), (1, 0)))
    assert hit.point == (Fraction(1, 2), Fraction(1, 2))
    assert not range_segment_intersection(((0, 0), (1, 0)), ((0, 1), (1, 1)))


def test_single_circle_has_no_double_points():
    m, js, st = structure("s4boundary", 1, "linear")
    assert st.double_point_ids() == []
    assert len(st.edges) == js.j_e
    assert double_points(st) == []
    assert all(d == 2 for d in st.degrees())


@pytest.mark.parametrize("args", [("torus3", 4, "cosine"), ("torus3", 6, "fig1"),
                                  ("torus3", 8, "fig3")])
def test_bookkeeping(args):
    m, js, st = structure(*args)
    deg = st.degrees()
    dps = st.double_point_ids()
    assert all(deg[v] == 4 for v in dps)
    assert len(st.edges) == js.j_e + 2 * len(dps)
    assert len(double_points(st)) == len(dps)
    for v in st.vertices:
        if v.kind == "projected-jacobi-vertex":
            assert deg[v.id] == js.degree(v.preimage)


def test_fragments_are_f1_monotone_and_tile_edges():
    m, js, st = structure("torus3", 6, "fig1")
    for e, frags in st.fragments.items():
        ts = [(st.edges[f].t0, st.edges[f].t1) for f in frags]
        assert ts[0][0] == 0 and ts[-1][1] == 1
        assert all(a[1] == b[0] for a, b in zip(ts, ts[1:]))
        assert all(t0 < t1 for t0, t1 in ts)


def test_edge_endpoints_match_range_points():
    from reebspace.contour import edge_point
    m, js, st = structure("torus3", 6, "fig1")
    for f in st.edges:
        assert st.vertices[f.u].point == edge_point(m, f.source, f.t0)
        assert st.vertices[f.v].point == edge_point(m, f.source, f.t1)


def test_crossing_outcomes_are_recorded():
    m, js, st = structure("torus3", 6, "fig1")
    outcomes = {t.outcome for t in st.tests}
    assert "double-point" in outcomes
    assert outcomes & {"different-f1-contour", "different-f2-contour"}
    assert sum(t.outcome == "double-point" for t in st.tests) == len(st.crossings)


def test_witnesses_lie_on_one_contour():
    md = mdrg_of("torus3", 6, "fig1")
    m = md.mesh
    for rec in md.jstruct.crossings:
        (e, s), (e2, t) = rec.x, rec.y
        from reebspace.contour import edge_point
        assert edge_point(m, e, s) == rec.point == edge_point(m, e2, t)


def test_idempotent():
    _, _, a = structure("torus3", 4, "cosine")
    m = dataset("torus3", 4, "cosine")
    js = compute_jacobi_set(m)
    b = compute_jacobi_structure(m, js, ReebGraph.from_tetfield(m, "f1"))
    assert [(v.kind, v.point) for v in a.vertices] == [(v.kind, v.point) for v in b.vertices]
    assert [(e.u, e.v, e.source) for e in a.edges] == [(e.u, e.v, e.source) for e in b.edges]


def test_no_duplicate_vertices():
    _, _, st = structure("torus3", 6, "fig1")
    keys = [(v.kind, v.point, repr(v.preimage)) for v in st.vertices]
    assert len(keys) == len(set(keys))
