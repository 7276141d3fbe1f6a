import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reebspace.generators import generate, s4boundary_complex, torus3_complex
from reebspace.mesh import (LinkComplex, MeshStructureError, ReducedBetti, TetField, link,
                            lower_link, reduced_betti, upper_link, validate_manifold,
                            z2_reduced_betti)

from conftest import dataset, s4_mesh


def test_s4_boundary_is_valid(s4):
    assert validate_manifold(s4).ok
    assert (s4.n_v, s4.n_e, s4.n_t, s4.n_T) == (5, 10, 10, 5)
    assert s4.euler_characteristic() == 0
    assert s4.n == 30


def test_deleted_tet_leaves_boundary():
    pos, tets = s4boundary_complex()
    m = TetField(pos, pos[:, 0], pos[:, 1], tets[1:])
    rep = validate_manifold(m)
    assert not rep.ok
    open_tris = [i for i in rep.issues if i.simplex == "triangle"]
    assert len(open_tris) == 4
    assert all("1 cofaces" in i.condition for i in open_tris)


def test_torus_r3_is_valid():
    m = dataset("torus3", 3, "linear")
    assert validate_manifold(m).ok
    assert m.euler_characteristic() == 0


def test_torus_r2_counts():
    pos, tets = torus3_complex(2)
    assert len(pos) == 8 and len(tets) == 48


def test_torus_r2_is_not_simplicial():
    # the 2-periodic grid repeats tets: no simplicial 3-torus has 8 vertices
    with pytest.raises(MeshStructureError):
        generate("torus3", 2, "linear")


def test_edges_ascending(s4):
    assert np.all(s4.edges[:, 0] < s4.edges[:, 1])


def test_out_of_range_index_is_structural():
    with pytest.raises(MeshStructureError):
        TetField(np.zeros((4, 3)), [0, 1, 2, 3], [0, 1, 2, 3], [[0, 1, 2, 4]])


def test_nonfinite_rejected():
    with pytest.raises(MeshStructureError):
        TetField(np.zeros((4, 3)), [0, 1, 2, np.nan], [0, 1, 2, 3], [[0, 1, 2, 3]])


def test_links_of_s4(s4):
    lk = link(s4, 0)
    assert lk.vertices == (1, 2, 3, 4)
    assert set(lk.triangles) == set(itertools.combinations((1, 2, 3, 4), 3))
    cyc = link(s4, (0, 1))
    assert cyc.vertices == (2, 3, 4) and len(cyc.edges) == 3


def test_torus_links_are_spheres_and_circles():
    m = dataset("torus3", 3, "linear")
    for v in range(m.n_v):
        assert link(m, v).euler_characteristic() == 2
    for a, b in m.edges.tolist():
        c = link(m, (a, b))
        assert len(c.vertices) == len(c.edges)


def test_lower_links_with_index_field(s4):
    assert lower_link(s4, 0).is_empty()
    top = lower_link(s4, 4)
    assert top.whole_link
    two = lower_link(s4, 2)
    assert two.vertices == (0, 1) and two.edges == ((0, 1),)


def test_lower_upper_never_both_empty():
    m = dataset("torus3", 3, "cosine")
    for v in range(m.n_v):
        assert not (lower_link(m, v).is_empty() and upper_link(m, v).is_empty())


def test_reduced_betti_examples():
    empty = LinkComplex((), (), (), False)
    assert reduced_betti(empty).as_tuple() == (1, 0, 0, 0)
    two = LinkComplex((1, 2), (), (), False)
    assert reduced_betti(two).as_tuple() == (0, 1, 0, 0)
    s4 = s4_mesh()
    assert reduced_betti(link(s4, 0)).as_tuple() == (0, 0, 0, 1)


def test_reduced_betti_rejects_non_complex():
    bad = LinkComplex((1,), ((1, 2),), (), False)
    with pytest.raises(MeshStructureError):
        reduced_betti(bad)


def _small_links():
    m = dataset("torus3", 3, "linear")
    out = [link(m, v) for v in range(m.n_v)]
    return [lk for lk in out if len(lk.vertices) <= 14]


LINKS = _small_links()


@settings(max_examples=200, deadline=None)
@given(st.integers(0, len(LINKS) - 1), st.integers(0, 2 ** 14 - 1))
def test_betti_shortcut_matches_z2_rank(i, mask):
    lk = LINKS[i]
    keep = [v for k, v in enumerate(lk.vertices) if mask >> k & 1]
    sub = lk.full_subcomplex(keep)
    assert reduced_betti(sub) == z2_reduced_betti(sub)


def test_reduced_betti_invariant_b2():
    lk = LINKS[0]
    rng = random.Random(3)
    for _ in range(50):
        sub = lk.full_subcomplex(v for v in lk.vertices if rng.random() < 0.6)
        b = reduced_betti(sub)
        assert b.b2 <= 1
        assert (b.b_neg1 == 1) == sub.is_empty() == (b == ReducedBetti(1, 0, 0, 0))
