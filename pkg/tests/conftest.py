from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from minksum.lattice import Polytope, cuboid
from minksum.oracle import brute_hull
from minksum.planar import ConvexPolygon

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

# A tetrahedron and a cube chosen so that no facet, edge or vertex direction
# of one is parallel to a face of the other.
TETRA_POINTS = [(0, 0, 0), (5, 1, 2), (1, 6, 3), (3, 2, 7)]
SIMPLEX_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.fixture
def cube() -> Polytope:
    return cuboid((0, 0, 0), (1, 1, 1), "cube")


@pytest.fixture
def tetra() -> Polytope:
    return brute_hull(TETRA_POINTS, "tetra")


@pytest.fixture
def simplex3() -> Polytope:
    return brute_hull(SIMPLEX_POINTS, "simplex")


@pytest.fixture
def square_poly() -> ConvexPolygon:
    return ConvexPolygon(((0, 0), (1, 0), (1, 1), (0, 1)))


@pytest.fixture
def triangle_poly() -> ConvexPolygon:
    return ConvexPolygon(((0, 0), (1, 0), (0, 1)))


@pytest.fixture
def diamond_poly() -> ConvexPolygon:
    return ConvexPolygon(((1, 0), (0, 1), (-1, 0), (0, -1)))


def frac_point(*xs):
    return tuple(F(x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
