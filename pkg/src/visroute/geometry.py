"""Planar primitives: orientation, proper segment crossing, and clockwise
angle arithmetic.

All functions accept plain ``(x, y)`` pairs.  ``orient`` is an exact
predicate whenever coordinates are integers (or integer multiples of one
common power of two) of magnitude at most 2**25, because every product in
the cross determinant then fits a double without rounding.
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import NamedTuple

from .errors import InvalidDirectionError

TWO_PI = 2.0 * math.pi

# The one snapping tolerance for angle comparisons, in radians.  Directions
# within ANGLE_EPS of a cone ray are treated as lying on that ray.
ANGLE_EPS = 1e-12


class Point(NamedTuple):
    x: float
    y: float

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


class Orientation(IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def orient(a, b, c) -> Orientation:
    """Orientation of the ordered triple (a, b, c): the sign of the cross
    product (b - a) x (c - a)."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if det > 0.0:
        return Orientation.COUNTERCLOCKWISE
    if det < 0.0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def segments_properly_cross(s1, s2) -> bool:
    """True iff the open segments share exactly one interior point.

    Touching at an endpoint, collinear overlap, and T-junctions are not
    proper crossings.
    """
    a, b = s1
    c, d = s2
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 * o4 < 0


def _on_segment_collinear(a, b, w) -> bool:
    # assumes orient(a, b, w) == COLLINEAR; closed bounding-box test
    return (min(a[0], b[0]) <= w[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= w[1] <= max(a[1], b[1]))


def point_on_closed_segment(a, b, w) -> bool:
    """True iff w lies on the closed segment ab."""
    return orient(a, b, w) is Orientation.COLLINEAR and _on_segment_collinear(a, b, w)


def point_on_open_segment(a, b, w) -> bool:
    """True iff w lies strictly between a and b on the segment ab."""
    return (point_on_closed_segment(a, b, w)
            and (w[0], w[1]) != (a[0], a[1]) and (w[0], w[1]) != (b[0], b[1]))


def segments_intersect(s1, s2) -> bool:
    """True iff the closed segments share at least one point (crossing,
    touching, or collinear overlap).  Used by domain validation, where any
    contact between distinct chains is a violation."""
    a, b = s1
    c, d = s2
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment_collinear(a, b, c):
        return True
    if o2 == 0 and _on_segment_collinear(a, b, d):
        return True
    if o3 == 0 and _on_segment_collinear(c, d, a):
        return True
    if o4 == 0 and _on_segment_collinear(c, d, b):
        return True
    return False


def clockwise_angle(from_dir, to_dir) -> float:
    """The clockwise rotation in [0, 2*pi) carrying from_dir onto to_dir."""
    if from_dir[0] == 0.0 and from_dir[1] == 0.0:
        raise InvalidDirectionError("from_dir is the zero vector")
    if to_dir[0] == 0.0 and to_dir[1] == 0.0:
        raise InvalidDirectionError("to_dir is the zero vector")
    ang = math.atan2(from_dir[1], from_dir[0]) - math.atan2(to_dir[1], to_dir[0])
    ang %= TWO_PI
    if ang >= TWO_PI:  # float modulo may round up to the divisor itself
        ang = 0.0
    return ang


def rotate_clockwise(d, angle: float) -> Point:
    """d rotated clockwise by `angle` radians."""
    c = math.cos(angle)
    s = math.sin(angle)
    return Point(d[0] * c + d[1] * s, -d[0] * s + d[1] * c)


def unit(d) -> Point:
    """d scaled to unit length."""
    n = math.hypot(d[0], d[1])
    if n == 0.0:
        raise InvalidDirectionError("cannot normalize the zero vector")
    return Point(d[0] / n, d[1] / n)


def distance(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])
