"""Cone fans: the count t as a function of epsilon, the per-vertex fan
of t half-open cones subdividing the inner angle, and direction-to-cone
lookup."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import PolygonalDomain, VertexLabel, base_ray, inner_angle
from .errors import OrientationCorruptionError, OutsideSectorError
from .geometry import (
    ANGLE_EPS,
    TWO_PI,
    Point,
    clockwise_angle,
    rotate_clockwise,
    unit,
)

# slack for the sector-membership precondition, in radians
SECTOR_TOL = 1e-9


def cone_count(epsilon: float) -> int:
    """Number of cones per vertex for a target stretch of 1 + epsilon:
    ceil(pi / arcsin(1 / (2 (1 + 1/epsilon)))).

    The result is at least 6 (the limit for large epsilon) and at most
    2 pi (1 + 1/epsilon) + 1.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    t = math.ceil(math.pi / math.asin(1.0 / (2.0 * (1.0 + 1.0 / epsilon))))
    assert t >= 6
    assert t <= 2.0 * math.pi * (1.0 + 1.0 / epsilon) + 1.0
    return t


@dataclass(frozen=True)
class ConeFan:
    """Fan at one vertex: rays r_0..r_t, where r_j is the base ray
    rotated clockwise by j*alpha/t.  Cone j (1-based) is bounded by
    r_{j-1} and r_j; each cone contains its leading ray r_{j-1} and
    excludes its trailing ray r_j, except that cone t contains r_t."""

    apex: VertexLabel
    apex_point: Point
    t: int
    alpha: float
    base_dir: Point
    rays: tuple[Point, ...]

    @property
    def width(self) -> float:
        return self.alpha / self.t


def build_fan(d: PolygonalDomain, p: VertexLabel, t: int) -> ConeFan:
    """Fan of t cones subdividing the inner angle at p.

    r_t must coincide with the direction toward p's other chain neighbor
    (within 1e-9 radians); a mismatch means the stored orientation is
    corrupt.
    """
    if t < 3:
        raise ValueError("a fan needs at least 3 cones")
    base = base_ray(d, p)
    alpha = inner_angle(d, p)
    rays = tuple(rotate_clockwise(base, j * alpha / t) for j in range(t + 1))
    pp = d.vertex(p)
    _, succ = d.neighbors(p)
    sp = d.vertex(succ)
    succ_dir = unit(Point(sp.x - pp.x, sp.y - pp.y))
    dev = clockwise_angle(rays[t], succ_dir)
    if min(dev, TWO_PI - dev) > 1e-9:
        raise OrientationCorruptionError(
            f"fan at {p} does not close on the chain neighbor (off by {dev} rad)")
    return ConeFan(p, pp, t, alpha, base, rays)


def cone_index(f: ConeFan, direction) -> int:
    """Index in [1, t] of the cone containing the direction.

    A direction within 1e-12 rad of a ray boundary is snapped onto it
    and assigned per the half-open convention (the ray belongs to the
    following cone; r_t belongs to cone t).  Directions more than 1e-9
    rad outside the sector raise OutsideSectorError.
    """
    phi = clockwise_angle(f.base_dir, direction)
    if phi >= TWO_PI - ANGLE_EPS:
        phi = 0.0
    if phi > f.alpha + SECTOR_TOL:
        raise OutsideSectorError(
            f"direction lies {phi - f.alpha} rad outside the sector at {f.apex}")
    if phi > f.alpha:
        phi = f.alpha
    w = f.alpha / f.t
    r = int(round(phi / w))
    if abs(phi - r * w) <= ANGLE_EPS:
        return r + 1 if r < f.t else f.t
    j = int(phi // w) + 1
    return j if j <= f.t else f.t
