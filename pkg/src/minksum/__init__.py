"""Exact Minkowski sums of convex polytopes on face lattices."""

from .errors import (
    CertificateError,
    DegeneracyError,
    DegeneracyReport,
    DegenerateSpan,
    DegenerateTie,
    InvalidPolygon,
    MinksumError,
    NotFullDimensional,
    ParseError,
    ValidationFailure,
    ZeroSideSign,
)
from .fileio import load_polygon, load_polytope, save_polygon, save_polytope
from .gen import GenSpec, generic_rotate, random_convex_polygon, random_polytope
from .lattice import (
    FaceLattice,
    FaceNode,
    Polytope,
    cuboid,
    euler_check,
    f_vector,
    lattice_isomorphic,
    point_polytope,
    validate_lattice,
)
from .minkd import FAST, PARANOID, SumStats, certificate_violations, minkowski_sum
from .multi import multi_minkowski_sum
from .oracle import brute_hull, oracle_minkowski
from .planar import ConvexPolygon, SweepStats, sum_polygons, sum_polygons_multi

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "DegeneracyError",
    "DegeneracyReport",
    "DegenerateSpan",
    "DegenerateTie",
    "InvalidPolygon",
    "MinksumError",
    "NotFullDimensional",
    "ParseError",
    "ValidationFailure",
    "ZeroSideSign",
    "load_polygon",
    "load_polytope",
    "save_polygon",
    "save_polytope",
    "GenSpec",
    "generic_rotate",
    "random_convex_polygon",
    "random_polytope",
    "FaceLattice",
    "FaceNode",
    "Polytope",
    "cuboid",
    "euler_check",
    "f_vector",
    "lattice_isomorphic",
    "point_polytope",
    "validate_lattice",
    "FAST",
    "PARANOID",
    "SumStats",
    "certificate_violations",
    "minkowski_sum",
    "multi_minkowski_sum",
    "brute_hull",
    "oracle_minkowski",
    "ConvexPolygon",
    "SweepStats",
    "sum_polygons",
    "sum_polygons_multi",
]
