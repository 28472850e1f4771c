import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from helpers import SQUARE, simple_polygon

from visroute.cones import build_fan, cone_count, cone_index
from visroute.domain import VertexLabel, base_ray, inner_angle
from visroute.errors import OutsideSectorError
from visroute.geometry import Point, rotate_clockwise
from visroute.harness import gen_star_polygon


def test_cone_count_worked_values():
    assert cone_count(1.0) == 13
    assert cone_count(0.5) == 19
    assert cone_count(0.1) == 70


def test_cone_count_rejects_bad_epsilon():
    for bad in (0.0, -1.0, -0.01):
        with pytest.raises(ValueError):
            cone_count(bad)


def test_cone_count_monotone_and_bounded():
    grid = np.logspace(-3, 3, 1000)
    prev = None
    for eps in grid:
        t = cone_count(float(eps))
        assert 6 <= t <= 2.0 * math.pi * (1.0 + 1.0 / eps) + 1.0
        if prev is not None:
            assert t <= prev  # more tolerance never needs more cones
        prev = t


def test_cone_count_guarantees_per_step_fraction():
    # the defining property of t: a cone of half-width pi/t shortcuts
    # at least a 1/(1+eps) fraction of the hop
    for eps in np.logspace(-3, 3, 200):
        t = cone_count(float(eps))
        assert 1.0 - 2.0 * math.sin(math.pi / t) >= 1.0 / (1.0 + eps) - 1e-12


@given(
    st.floats(min_value=1e-3, max_value=math.pi / 3),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=1e-3, max_value=100.0),
    st.floats(min_value=0.0, max_value=100.0),
)
def test_nearer_cone_mate_shortcuts_the_hop(width, f1, f2, r1, extra):
    # two points in a cone of the given width, the nearer at distance r1:
    # hopping to it leaves at most r2 - (1 - 2 sin(width/2)) r1 to go
    r2 = r1 + extra
    a1, a2 = f1 * width, f2 * width
    s = (r1 * math.cos(a1), r1 * math.sin(a1))
    q = (r2 * math.cos(a2), r2 * math.sin(a2))
    remaining = math.hypot(s[0] - q[0], s[1] - q[1])
    bound = r2 - (1.0 - 2.0 * math.sin(width / 2.0)) * r1
    assert remaining <= bound + 1e-9 * (1.0 + r2)


# --- fans on the unit square ------------------------------------------------

@pytest.fixture(scope="module")
def square_fan():
    d = simple_polygon(SQUARE)
    return d, build_fan(d, VertexLabel(0, 0), 13)


def test_fan_shape(square_fan):
    d, fan = square_fan
    assert fan.apex == VertexLabel(0, 0)
    assert fan.apex_point == d.vertex(VertexLabel(0, 0))
    assert fan.t == 13
    assert len(fan.rays) == 14
    assert fan.alpha == pytest.approx(math.pi / 2)
    assert fan.width == pytest.approx(math.pi / 26)
    assert fan.base_dir == base_ray(d, VertexLabel(0, 0)) == Point(0.0, 1.0)
    # rays sweep clockwise from the base to the other chain neighbor
    assert fan.rays[0] == fan.base_dir
    assert fan.rays[13].x == pytest.approx(1.0)
    assert fan.rays[13].y == pytest.approx(0.0, abs=1e-15)
    for j, ray in enumerate(fan.rays):
        want = rotate_clockwise(fan.base_dir, j * fan.alpha / 13)
        assert ray.x == pytest.approx(want.x, abs=1e-15)
        assert ray.y == pytest.approx(want.y, abs=1e-15)


def test_fan_needs_three_cones(square_fan):
    d, _ = square_fan
    with pytest.raises(ValueError):
        build_fan(d, VertexLabel(0, 0), 2)


def test_cone_index_worked_values(square_fan):
    _, fan = square_fan
    assert cone_index(fan, (0.0, 1.0)) == 1    # base ray
    assert cone_index(fan, (1.0, 1.0)) == 7    # diagonal: phi/width = 6.5
    assert cone_index(fan, (1.0, 0.0)) == 13   # closing ray stays in cone t


def test_cone_index_rays_lead_their_cones(square_fan):
    # each cone is entered at its leading ray: r_{j-1} lies in cone j
    _, fan = square_fan
    for j, ray in enumerate(fan.rays):
        want = j + 1 if j < fan.t else fan.t
        assert cone_index(fan, (ray.x, ray.y)) == want


def test_cone_index_scale_invariant(square_fan):
    _, fan = square_fan
    for scale in (1e-9, 1.0, 1e9):
        assert cone_index(fan, (0.3 * scale, 0.2 * scale)) == cone_index(
            fan, (0.3, 0.2))


def test_cone_index_outside_sector(square_fan):
    _, fan = square_fan
    for direction in ((-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0)):
        with pytest.raises(OutsideSectorError):
            cone_index(fan, direction)


def test_cone_index_interior_boundaries(square_fan):
    # a direction exactly on interior ray r_j belongs to cone j+1
    _, fan = square_fan
    w = fan.width
    for j in (1, 5, 12):
        direction = rotate_clockwise(fan.base_dir, j * w)
        assert cone_index(fan, (direction.x, direction.y)) == j + 1


def test_cone_index_covers_generated_fans():
    # every direction inside the sector maps into [1, t], and the cones
    # tile the sector in order
    d = gen_star_polygon(12, seed=13)
    for v in list(d.labels())[:4]:
        fan = build_fan(d, v, 7)
        alpha = inner_angle(d, v)
        last = 0
        for frac in np.linspace(0.0, 1.0, 113):
            direction = rotate_clockwise(fan.base_dir, frac * alpha)
            j = cone_index(fan, (direction.x, direction.y))
            assert 1 <= j <= fan.t
            assert j >= last  # clockwise sweep never goes backwards
            last = j
        assert last == fan.t
