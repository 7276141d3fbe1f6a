import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reebspace.contour import edge_point
from reebspace.fiber import (FiberPolyline, OracleError, count_fiber_components, extract_fiber,
                             is_regular_value, sample_regular_values)
from reebspace.generators import generate
from reebspace.jacobi import compute_jacobi_set
from reebspace.mesh import GenericityError

from conftest import dataset


@pytest.fixture(scope="module")
def s4lin():
    return generate("s4boundary", 1, "linear")


def test_outside_range_is_empty(s4lin):
    fp = extract_fiber(s4lin, (5.0, 5.0))
    assert fp.segments == [] and count_fiber_components(fp) == 0


def test_interior_value_is_a_loop(s4lin):
    fp = extract_fiber(s4lin, (0.5, 0.55))
    assert count_fiber_components(fp) == 1 == fp.n_components()
    ends = {}
    for _, (ta, _), (tb, _) in fp.segments:
        ends[ta] = ends.get(ta, 0) + 1
        ends[tb] = ends.get(tb, 0) + 1
    assert set(ends.values()) == {2}


def test_segments_are_affine_cuts(s4lin):
    fp = extract_fiber(s4lin, (0.5, 0.55))
    for T, (ta, ba), (tb, bb) in fp.segments:
        assert ta != tb
        assert ta in s4lin.tet_triangles[T].tolist() and tb in s4lin.tet_triangles[T].tolist()
        assert all(b > 0 for b in ba + bb) and sum(ba) == 1 == sum(bb)


def test_vertex_image_is_not_regular(s4lin):
    js = compute_jacobi_set(s4lin)
    v = 2
    r = (s4lin.f1[v], s4lin.f2[v])
    assert not is_regular_value(s4lin, js, r)
    with pytest.raises(GenericityError):
        extract_fiber(s4lin, r)


def test_jacobi_image_is_not_regular():
    m = dataset("torus3", 4, "cosine")
    js = compute_jacobi_set(m)
    e = js.edges[0]
    from fractions import Fraction
    assert not is_regular_value(m, js, edge_point(m, e, Fraction(1, 3)))
    assert is_regular_value(m, js, (100.0, 100.0))


def test_almost_all_samples_are_regular():
    m = dataset("torus3", 4, "cosine")
    js = compute_jacobi_set(m)
    rng = np.random.default_rng(2)
    lo1, hi1, lo2, hi2 = m.f1.min(), m.f1.max(), m.f2.min(), m.f2.max()
    vals = zip(rng.uniform(lo1, hi1, 1000), rng.uniform(lo2, hi2, 1000))
    ok = sum(is_regular_value(m, js, (float(a), float(b))) for a, b in vals)
    assert ok >= 990


def test_two_component_fiber():
    m = dataset("torus3", 4, "cosine")
    js = compute_jacobi_set(m)
    counts = {count_fiber_components(extract_fiber(m, r))
              for r in sample_regular_values(m, js, 60, seed=4)}
    assert 2 in counts


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_stitching_is_order_invariant(seed):
    m = dataset("torus3", 4, "cosine")
    js = compute_jacobi_set(m)
    r = sample_regular_values(m, js, 1, seed=seed % 97)[0]
    fp = extract_fiber(m, r)
    shuffled = list(fp.segments)
    random.Random(seed).shuffle(shuffled)
    assert count_fiber_components(FiberPolyline(fp.value, shuffled)) == count_fiber_components(fp)


def test_open_chain_is_an_oracle_error(s4lin):
    fp = extract_fiber(s4lin, (0.5, 0.55))
    broken = FiberPolyline(fp.value, fp.segments[:-1])
    with pytest.raises(OracleError):
        count_fiber_components(broken)
