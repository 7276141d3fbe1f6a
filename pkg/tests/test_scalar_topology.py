from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reebspace.contour import extract_contour, sorted_f1, tetrahedron_surface
from reebspace.mesh import GenericityError
from reebspace.reebgraph import (InsertPoint, ReebGraph, augment, classify_all, classify_vertex,
                                 euler_sum, level_at, reeb_graphs_topologically_equivalent)

from conftest import dataset, mdrg_of


def crossed_tet_components(mesh, y):
    """Independent oracle: union-find over crossed tets glued by crossed triangles."""
    below = mesh.f1 < y
    crossed = [T for T, t in enumerate(mesh.tets.tolist()) if 0 < sum(below[t]) < 4]
    parent = {T: T for T in crossed}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for k, tri in enumerate(mesh.triangles.tolist()):
        if 0 < sum(below[tri]) < 3:
            a, b = mesh.triangle_tets[k]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(T) for T in crossed})


# -- classification -----------------------------------------------------------

def test_classify_index_field(s4):
    c0 = classify_vertex(s4, "f1", 0)
    assert c0.kind == "minimum" and c0.index == 0
    assert classify_vertex(s4, "f1", 2).kind == "regular"
    assert classify_vertex(s4, "f1", 4).kind == "maximum"


def test_kernel_classification_matches_links():
    m = dataset("torus3", 4, "cosine")
    fast = classify_all(m, "f1")
    for v in range(m.n_v):
        assert fast[v] == classify_vertex(m, "f1", v)


@pytest.mark.parametrize("field", ["cosine", "fig1", "linear"])
def test_alternating_index_sum_is_zero(field):
    m = dataset("torus3", 8 if field == "cosine" else 4, field)
    for fld in ("f1", "f2"):
        assert euler_sum(classify_all(m, fld)) == 0


def test_cosine_torus_counts():
    m = dataset("torus3", 8, "cosine")
    kinds = [c.kind for c in classify_all(m, "f1")]
    # cos x + cos y + cos z is a perfect Morse function on T^3
    assert kinds.count("minimum") == 1 and kinds.count("maximum") == 1
    assert kinds.count("saddle1") == 3 and kinds.count("saddle2") == 3


# -- contours ---------------------------------------------------------------------

def test_contour_of_s4_near_minimum(s4):
    comps = extract_contour(s4, 0.5)
    assert len(comps) == 1
    c = comps[0]
    assert c.n_v == 4 and c.n_t == 4
    assert c.is_closed_manifold() and c.euler_characteristic() == 2


def test_contour_outside_range(s4):
    assert extract_contour(s4, -1.0) == []
    assert extract_contour(s4, 9.0) == []


def test_contour_at_vertex_value_needs_tiebreak(s4):
    with pytest.raises(GenericityError):
        extract_contour(s4, 2.0)


@pytest.mark.parametrize("y", [0.0, -1.7, 1.3, 2.5])
def test_contour_components_match_oracle(y):
    m = dataset("torus3", 8, "cosine")
    comps = extract_contour(m, y)
    assert len(comps) == crossed_tet_components(m, y)
    assert all(c.is_closed_manifold() for c in comps)


def test_contour_vertices_carry_provenance():
    m = dataset("torus3", 4, "cosine")
    for c in extract_contour(m, 0.1):
        for e, t in zip(c.edge, c.t):
            assert 0 < t < 1
            a, b = m.edges[e].tolist()
            f1a, f1b = Fraction(m.f1[a]), Fraction(m.f1[b])
            assert f1a + t * (f1b - f1a) == Fraction(0.1)


# -- Reeb graphs --------------------------------------------------------------------

def test_s4_reeb_graph(s4):
    rg = ReebGraph.from_tetfield(s4, "f1")
    assert rg.n_nodes == 2 and rg.n_arcs == 1
    assert sorted(n.type for n in rg.nodes) == ["maximum", "minimum"]


def test_tetrahedron_surface_graph():
    rg = ReebGraph.from_surface(tetrahedron_surface([0, 1, 2, 3]))
    assert rg.n_nodes == 2 and rg.n_arcs == 1


def test_torus_contour_graph():
    md = mdrg_of("torus3", 6, "fig1")
    tori = [rec for rec in md.arcs.values() if rec.contour.genus() == 1]
    assert tori
    for rec in tori:
        g = rec.rg2
        assert g.betti1() == 1
        assert g.n_nodes >= 4
        crit = [n for n in g.nodes if n.type != "degree2"]
        assert {n.type for n in crit} >= {"minimum", "maximum"}


@pytest.mark.parametrize("field", ["cosine", "fig1", "linear"])
def test_degree_table(field):
    rg = ReebGraph.from_tetfield(dataset("torus3", 4, field), "f1")
    assert rg.check_degrees() == []


def test_every_critical_vertex_is_a_node():
    m = dataset("torus3", 4, "cosine")
    rg = ReebGraph.from_tetfield(m, "f1")
    crit = {v for v, c in enumerate(classify_all(m, "f1")) if c.critical}
    assert crit == set(rg.vertex_node)


def test_point_counts_match_contours():
    m = dataset("torus3", 4, "cosine")
    rg = ReebGraph.from_tetfield(m, "f1")
    sv = sorted_f1(m)
    for a, b in zip(sv, sv[1:]):
        lvl = level_at(sv, (a + b) / 2)
        assert rg.point_count(lvl) == len(extract_contour(m, lvl))


def test_locate_round_trip(s4):
    rg = ReebGraph.from_tetfield(s4, "f1")
    for n in rg.nodes:
        assert rg.locate(n.vertex).node == n.id
    p = rg.locate(((0, 1, 2, 3), (Fraction(1, 2), Fraction(1, 6), Fraction(1, 6), Fraction(1, 6))))
    assert p.arc == 0


def test_locate_rejects_foreign_points(s4):
    rg = ReebGraph.from_tetfield(s4, "f1")
    with pytest.raises(ValueError):
        rg.locate(((0, 9), (Fraction(1, 2), Fraction(1, 2))))
    with pytest.raises(ValueError):
        rg.locate(((0, 1), (Fraction(2), Fraction(-1))))


@settings(max_examples=40, deadline=None)
@given(st.floats(-2.9, 2.9))
def test_locate_is_constant_on_contours(y):
    m = dataset("torus3", 4, "cosine")
    rg = ReebGraph.from_tetfield(m, "f1")
    sv = sorted_f1(m)
    try:
        lvl = level_at(sv, y)
    except GenericityError:
        return
    for c in extract_contour(m, lvl):
        pts = {rg.locate_edge(e, lvl) for e in c.edge}
        assert len(pts) == 1
        a, b = m.edges[c.edge[0]].tolist()
        t = c.t[0]
        assert rg.locate(((a, b), (1 - t, t))) in pts


# -- augmentation and equivalence ----------------------------------------------------

def test_augment_examples(s4):
    rg = ReebGraph.from_tetfield(s4, "f1")
    same = augment(rg, [])
    assert same.n_nodes == 2 and same.n_arcs == 1
    one = augment(rg, [InsertPoint(0, (3, Fraction(2)), "C2")])
    assert one.n_nodes == 3 and one.n_arcs == 2
    two = augment(rg, [InsertPoint(0, (5, Fraction(3)), "C2"), InsertPoint(0, (3, Fraction(2)), "C2")])
    assert two.n_nodes == 4 and two.n_arcs == 3
    values = [two.nodes[a.lo].value for a in two.arcs]
    assert values == sorted(values)
    node_pt = augment(rg, [InsertPoint(0, rg.nodes[0].key, "C2")])
    assert node_pt.n_nodes == 2


def test_equivalence_examples(s4):
    rg = ReebGraph.from_tetfield(s4, "f1")
    assert reeb_graphs_topologically_equivalent(rg, rg)
    md = mdrg_of("torus3", 6, "fig1")
    loop = next(rec.rg2 for rec in md.arcs.values() if rec.rg2.betti1() == 1)
    assert not reeb_graphs_topologically_equivalent(rg, loop)


def test_arc_monotone():
    rg = ReebGraph.from_tetfield(dataset("torus3", 4, "fig1"), "f2")
    for a in rg.arcs:
        assert rg.nodes[a.lo].key < rg.nodes[a.hi].key
