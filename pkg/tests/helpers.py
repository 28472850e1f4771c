"""Shared construction helpers for the test suite."""

from visroute.domain import HOLE, OUTER, Boundary, PolygonalDomain
from visroute.geometry import Point


def ring(points):
    return tuple(Point(float(x), float(y)) for x, y in points)


def simple_polygon(points) -> PolygonalDomain:
    return PolygonalDomain((Boundary(OUTER, ring(points)),))


def holed_polygon(outer, *holes) -> PolygonalDomain:
    chains = [Boundary(OUTER, ring(outer))]
    for hole in holes:
        chains.append(Boundary(HOLE, ring(hole)))
    return PolygonalDomain(tuple(chains))


SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))

# Convex, in general position: complete visibility graph on 5 vertices.
PENTAGON = ((0, 0), (4, 1), (5, 4), (2, 6), (-1, 3))

# 10x10 square around a convex quadrilateral hole (hole listed clockwise,
# the storage orientation for holes).  No three of the eight vertices are
# collinear, so the domain is in general position.
BIG_SQUARE = ((0, 0), (10, 0), (10, 10), (0, 10))
QUAD_HOLE = ((3, 4), (3, 6), (6, 7), (6, 3))
