"""Synthetic datasets: shapes, field pairs and their expected signatures.

Shapes
------
``s4boundary``
    Boundary of the 4-simplex, the smallest triangulated 3-sphere.
``torus3``
    The periodic ``R x R x R`` grid, every cube cut into 6 tetrahedra along
    its main diagonal (Freudenthal subdivision), opposite faces identified.

Every field pair gets a tiny deterministic jitter so that vertex values and
range images are in general position.
"""
from __future__ import annotations

import itertools
from typing import Dict, Tuple

import numpy as np

from .mesh import TetField

SHAPES = ("s4boundary", "torus3")
FIELDS = ("linear", "cosine", "fig1", "fig2", "fig3")

JITTER = 1e-6
TWO_PI = 2.0 * np.pi

# generic placement of the five points of the 4-simplex boundary
_S4_POSITIONS = np.array([
    [0.00, 0.00, 0.00],
    [1.00, 0.17, 0.31],
    [0.23, 1.00, 0.43],
    [0.47, 0.59, 1.00],
    [0.83, 0.71, 0.57],
])


def s4boundary_complex() -> Tuple[np.ndarray, np.ndarray]:
    tets = np.array(list(itertools.combinations(range(5), 4)), dtype=np.int64)
    return _S4_POSITIONS.copy(), tets


def torus3_complex(resolution: int) -> Tuple[np.ndarray, np.ndarray]:
    """Vertices and tets of the Freudenthal 3-torus at ``resolution``."""
    R = int(resolution)
    if R < 1:
        raise ValueError("resolution must be at least 1")
    idx = np.arange(R)
    k, j, i = np.meshgrid(idx, idx, idx, indexing="ij")
    pos = np.stack([i.ravel(), j.ravel(), k.ravel()], axis=1) / R

    def vid(x, y, z):
        return (x % R) + R * ((y % R) + R * (z % R))

    steps = np.eye(3, dtype=np.int64)
    tets = []
    for z in range(R):
        for y in range(R):
            for x in range(R):
                for perm in itertools.permutations(range(3)):
                    p = np.array([x, y, z])
                    verts = [vid(*p)]
                    for axis in perm:
                        p = p + steps[axis]
                        verts.append(vid(*p))
                    tets.append(verts)
    return pos, np.array(tets, dtype=np.int64)


def field_values(name: str, pos: np.ndarray, shape: str = "torus3"):
    """Evaluate the named field pair at ``pos`` (without jitter)."""
    x, y, z = pos[:, 0], pos[:, 1], pos[:, 2]
    X, Y, Z = TWO_PI * x, TWO_PI * y, TWO_PI * z
    if name == "linear":
        return x.copy(), y.copy()
    if name == "cosine":
        f1 = np.cos(X) + np.cos(Y) + np.cos(Z)
        f2 = np.sin(X + 0.7) + np.sin(Y + 1.9) + np.sin(Z + 3.1)
        return f1, f2
    if name == "fig1":
        # perfect Morse function of T^3; the first index-1 saddle turns the
        # spherical contour into a torus, where f2 picks up a loop
        f1 = -(np.cos(X) + 0.6 * np.cos(Y) + 0.3 * np.cos(Z))
        f2 = np.sin(X + 0.4) + 0.8 * np.cos(Y + 0.9) + 0.5 * np.sin(Z + 1.7)
        return f1, f2
    if name == "fig2":
        # tube contours z ~ const with f2 = h(x; z) + cos y; h gains a
        # second min/max pair once c(z) is large enough, so pairs of
        # critical points of f2 are born as f1 grows
        f1 = -np.cos(Z) + 0.1 * (np.cos(X) + 0.5 * np.cos(Y))
        c = 0.9 - 0.8 * np.cos(Z)
        f2 = np.cos(Z) + 0.3 * np.sin(Z) + np.cos(X) + c * np.sin(2.0 * X + 0.8) \
            + 0.5 * np.cos(Y)
        return f1, f2
    if name == "fig3":
        # each tube z ~ const carries a torus contour on which f2 is a sum
        # of an x-cosine and a y-cosine; its two saddles trade places where
        # the amplitudes agree, at z = pi/4 + k pi/2.  The cos z term of f2
        # follows f1 so the vertical Jacobi strands do not bifurcate.
        f1 = -np.cos(Z) + 0.1 * (np.cos(X) + 0.5 * np.cos(Y))
        a = 1.05 + 0.3 * np.cos(2.0 * Z)
        f2 = np.cos(Z) + 0.3 * np.sin(Z) + np.cos(X) + a * np.cos(Y)
        return f1, f2
    raise ValueError(f"unknown field pair {name!r}; expected one of {FIELDS}")


def _jitter(n: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    return JITTER * rng.standard_normal(n), JITTER * rng.standard_normal(n)


_SEEDS = {"linear": 11, "cosine": 23, "fig1": 31, "fig2": 47, "fig3": 59}


def generate(shape: str, resolution: int = 4, field: str = "linear") -> TetField:
    """Build a dataset.

    Parameters
    ----------
    shape : {"s4boundary", "torus3"}
    resolution : int
        Grid size for ``torus3``; ignored for ``s4boundary``.
    field : {"linear", "cosine", "fig1", "fig2", "fig3"}
    """
    if shape == "s4boundary":
        pos, tets = s4boundary_complex()
    elif shape == "torus3":
        pos, tets = torus3_complex(resolution)
    else:
        raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")
    f1, f2 = field_values(field, pos, shape)
    j1, j2 = _jitter(len(pos), _SEEDS[field] + 1000 * int(resolution if shape == "torus3" else 0))
    return TetField(pos, f1 + j1, f2 + j2, tets)


# resolution at which the figure datasets are built by default
DEFAULT_RESOLUTION = {"fig1": 6, "fig2": 8, "fig3": 8}


def expectations(field: str) -> Dict[str, object]:
    """The designed signature of a figure dataset (empty for the others)."""
    if field == "fig1":
        return {"rg2_loop_gain": True}
    if field == "fig2":
        return {"birth": True}
    if field == "fig3":
        return {"double_points": 4}
    return {}
