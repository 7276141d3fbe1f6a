import numpy as np
import pytest

from reebspace import _pykernels, kernels

from conftest import dataset

compiled = pytest.importorskip("reebspace._kernels")


@pytest.fixture(scope="module")
def mesh():
    return dataset("torus3", 4, "cosine")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_vertex_link_stats_agree(mesh):
    args = (*mesh.link_csr(), mesh.rank("f1"))
    assert np.array_equal(np.asarray(compiled.vertex_link_stats(*args)),
                          np.asarray(_pykernels.vertex_link_stats(*args)))


def test_edge_link_signs_agree(mesh):
    ptr, cyc = mesh.edge_cycles_csr()
    tail, head = mesh.edges[:, 0].copy(), mesh.edges[:, 1].copy()
    a = compiled.edge_link_signs(ptr, cyc, tail, head, mesh.f1, mesh.f2)
    b = _pykernels.edge_link_signs(ptr, cyc, tail, head, mesh.f1, mesh.f2)
    assert np.array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.parametrize("r", [(0.1, 0.2), (-1.3, 0.7), (2.0, -2.5), (10.0, 10.0)])
def test_triangles_containing_agree(mesh, r):
    a = compiled.triangles_containing(mesh.triangles, mesh.f1, mesh.f2, *r)
    b = _pykernels.triangles_containing(mesh.triangles, mesh.f1, mesh.f2, *r)
    assert np.array_equal(np.asarray(a), np.asarray(b))


def test_bbox_pairs_agree():
    rng = np.random.default_rng(5)
    lo = rng.uniform(0, 1, (2, 300))
    hi = lo + rng.uniform(0, 0.05, (2, 300))
    a = np.asarray(compiled.bbox_overlap_pairs(lo[0], hi[0], lo[1], hi[1]))
    b = np.asarray(_pykernels.bbox_overlap_pairs(lo[0], hi[0], lo[1], hi[1]))
    assert np.array_equal(a, b)
    brute = sorted((i, j) for i in range(300) for j in range(i + 1, 300)
                   if lo[0, i] <= hi[0, j] and lo[0, j] <= hi[0, i]
                   and lo[1, i] <= hi[1, j] and lo[1, j] <= hi[1, i])
    assert [tuple(p) for p in b.tolist()] == brute
