"""Reeb spaces of bivariate piecewise-linear fields on tetrahedral 3-manifolds.

The pipeline is Jacobi set -> Jacobi structure -> multi-dimensional Reeb
graph -> net-like Reeb space skeleton; a brute-force fiber oracle checks
the result.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .mesh import GenericityError, MeshStructureError, TetField, validate_manifold
from .reebgraph import ReebGraph, reeb_graphs_topologically_equivalent
from .jacobi import JacobiSet, compute_jacobi_set
from .jacobi_structure import JacobiStructure, compute_jacobi_structure
from .mdrg import Mdrg, SimplicityError, compute_mdrg
from .reeb_space import ReebSpaceNet, build_net, compute_reeb_space, query_fiber_components_at
from .fiber import count_fiber_components, extract_fiber, fiber_components, is_regular_value
from .generators import generate
from .io import ParseError, parse_tetfield, write_tetfield
from .export import export
from .kernels import BACKEND

__all__ = [
    "GenericityError", "MeshStructureError", "TetField", "validate_manifold",
    "ReebGraph", "reeb_graphs_topologically_equivalent",
    "JacobiSet", "compute_jacobi_set", "JacobiStructure", "compute_jacobi_structure",
    "Mdrg", "SimplicityError", "compute_mdrg",
    "ReebSpaceNet", "build_net", "compute_reeb_space", "query_fiber_components_at",
    "count_fiber_components", "extract_fiber", "fiber_components", "is_regular_value",
    "generate", "ParseError", "parse_tetfield", "write_tetfield", "export", "BACKEND",
]
