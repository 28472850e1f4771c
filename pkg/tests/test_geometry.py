import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from visroute.errors import InvalidDirectionError
from visroute.geometry import (
    ANGLE_EPS,
    Orientation,
    Point,
    clockwise_angle,
    distance,
    orient,
    point_on_closed_segment,
    point_on_open_segment,
    rotate_clockwise,
    segments_intersect,
    segments_properly_cross,
    unit,
)

TWO_PI = 2.0 * math.pi

coords = st.integers(min_value=-1000, max_value=1000)
points = st.tuples(coords, coords)


def test_orient_basic():
    assert orient((0, 0), (1, 0), (0, 1)) is Orientation.COUNTERCLOCKWISE
    assert orient((0, 0), (0, 1), (1, 0)) is Orientation.CLOCKWISE
    assert orient((0, 0), (1, 1), (2, 2)) is Orientation.COLLINEAR


@given(points, points, points)
def test_orient_antisymmetric_in_last_two(a, b, c):
    assert orient(a, b, c) == -orient(a, c, b)


@given(points, points, points)
def test_orient_cyclic(a, b, c):
    assert orient(a, b, c) == orient(b, c, a) == orient(c, a, b)


def test_proper_crossing():
    assert segments_properly_cross(((0, 0), (2, 2)), ((0, 2), (2, 0)))
    # shared endpoint is not a proper crossing
    assert not segments_properly_cross(((0, 0), (1, 1)), ((1, 1), (2, 0)))
    # T-junction: endpoint interior to the other segment
    assert not segments_properly_cross(((0, 0), (2, 0)), ((1, 0), (1, 1)))
    # collinear overlap
    assert not segments_properly_cross(((0, 0), (2, 0)), ((1, 0), (3, 0)))
    # disjoint
    assert not segments_properly_cross(((0, 0), (1, 0)), ((0, 1), (1, 1)))


@given(points, points, points, points)
def test_proper_crossing_symmetric(a, b, c, d):
    assert segments_properly_cross((a, b), (c, d)) == segments_properly_cross((c, d), (a, b))


@given(points, points, points, points)
def test_proper_crossing_implies_intersect(a, b, c, d):
    if segments_properly_cross((a, b), (c, d)):
        assert segments_intersect((a, b), (c, d))


def test_closed_intersection_touching():
    assert segments_intersect(((0, 0), (1, 1)), ((1, 1), (2, 0)))
    assert segments_intersect(((0, 0), (2, 0)), ((1, 0), (1, 1)))
    assert segments_intersect(((0, 0), (2, 0)), ((1, 0), (3, 0)))
    assert not segments_intersect(((0, 0), (1, 0)), ((0, 1), (1, 1)))


def test_on_segment():
    assert point_on_closed_segment((0, 0), (2, 2), (1, 1))
    assert point_on_closed_segment((0, 0), (2, 2), (2, 2))
    assert not point_on_closed_segment((0, 0), (2, 2), (3, 3))
    assert point_on_open_segment((0, 0), (2, 2), (1, 1))
    assert not point_on_open_segment((0, 0), (2, 2), (2, 2))
    assert not point_on_open_segment((0, 0), (2, 2), (1, 0))


def test_clockwise_angle_quarters():
    up = (0.0, 1.0)
    right = (1.0, 0.0)
    down = (0.0, -1.0)
    left = (-1.0, 0.0)
    assert clockwise_angle(up, right) == pytest.approx(math.pi / 2)
    assert clockwise_angle(up, down) == pytest.approx(math.pi)
    assert clockwise_angle(up, left) == pytest.approx(3 * math.pi / 2)
    assert clockwise_angle(up, up) == 0.0


def test_clockwise_angle_rejects_zero_vector():
    with pytest.raises(InvalidDirectionError):
        clockwise_angle((0.0, 0.0), (1.0, 0.0))
    with pytest.raises(InvalidDirectionError):
        clockwise_angle((1.0, 0.0), (0.0, 0.0))


nonzero_dirs = st.tuples(coords, coords).filter(lambda d: d != (0, 0))


@given(nonzero_dirs, nonzero_dirs)
def test_clockwise_angle_range(d1, d2):
    ang = clockwise_angle(d1, d2)
    assert 0.0 <= ang < TWO_PI


@given(nonzero_dirs, nonzero_dirs)
def test_clockwise_angle_complement(d1, d2):
    a = clockwise_angle(d1, d2)
    b = clockwise_angle(d2, d1)
    total = a + b
    assert (abs(total) <= 1e-9) or (abs(total - TWO_PI) <= 1e-9)


@given(nonzero_dirs)
def test_clockwise_angle_self_is_zero(d):
    assert clockwise_angle(d, d) == 0.0


def test_rotate_clockwise_quarter():
    p = rotate_clockwise((0.0, 1.0), math.pi / 2)
    assert p.x == pytest.approx(1.0)
    assert p.y == pytest.approx(0.0, abs=1e-15)


@given(nonzero_dirs, st.floats(min_value=0.0, max_value=TWO_PI - 1e-9))
def test_rotate_matches_angle(d, theta):
    r = rotate_clockwise(d, theta)
    got = clockwise_angle(d, r)
    # rotation by theta lands theta clockwise from the start
    assert min(abs(got - theta), abs(got - theta + TWO_PI), abs(got - theta - TWO_PI)) < 1e-6


def test_unit_and_distance():
    u = unit((3.0, 4.0))
    assert math.hypot(u.x, u.y) == pytest.approx(1.0)
    assert distance((0, 0), (3, 4)) == pytest.approx(5.0)
    with pytest.raises(InvalidDirectionError):
        unit((0.0, 0.0))


def test_angle_eps_is_small():
    assert 0.0 < ANGLE_EPS < 1e-9


def test_point_str():
    assert str(Point(1.5, -2.0)) == "(1.5, -2.0)"
