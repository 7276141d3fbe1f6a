from __future__ import annotations

import functools
import itertools

import numpy as np
import pytest

from reebspace.generators import generate
from reebspace.mdrg import compute_mdrg
from reebspace.mesh import TetField
from reebspace.reeb_space import build_net


def s4_mesh(f1=None, f2=None) -> TetField:
    """Boundary of the 4-simplex; f1 = vertex index unless given."""
    pos = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], dtype=float)
    tets = list(itertools.combinations(range(5), 4))
    if f1 is None:
        f1 = [0.0, 1.0, 2.0, 3.0, 4.0]
    if f2 is None:
        f2 = [0.3, 2.9, 1.7, 0.1, 4.4]
    return TetField(pos, f1, f2, tets)


@functools.lru_cache(maxsize=None)
def dataset(shape: str, resolution: int, field: str) -> TetField:
    return generate(shape, resolution, field)


@functools.lru_cache(maxsize=None)
def mdrg_of(shape: str, resolution: int, field: str):
    return compute_mdrg(dataset(shape, resolution, field), force=True)


@functools.lru_cache(maxsize=None)
def net_of(shape: str, resolution: int, field: str):
    return build_net(mdrg_of(shape, resolution, field))


@pytest.fixture
def s4():
    return s4_mesh()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
