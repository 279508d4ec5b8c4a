import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angular_hunt.errors import AmbiguousAtVertex, InvalidGeometry
from angular_hunt.geom import (
    EPS,
    PARALLEL,
    AngularHint,
    HalfPlane,
    Line,
    Point,
    Rect,
    StraightRect,
    angle_contains,
    dist_point_segment,
    halfplane_contains,
    line_intersection,
    project_point_line,
    reflect_vertical,
    rotate_about,
)
from support import cw_offset

coord = st.floats(-1e3, 1e3, allow_nan=False)
points = st.builds(Point, coord, coord)
angles = st.floats(0.0, 2 * math.pi, allow_nan=False)

X_AXIS = Line.make((0, 0), 0.0)
Y_AXIS = Line.make((0, 0), math.pi / 2)


# ---------------------------------------------------------------- distances


def test_distance_to_degenerate_segment():
    assert dist_point_segment((3, 4), (0, 0), (0, 0)) == 5.0


def test_distance_with_foot_inside_segment():
    assert dist_point_segment((5, 1), (0, 0), (10, 0)) == 1.0


def test_distance_beyond_segment_end_matches_sampling():
    sampled = min(math.hypot(-1 - 10 * t / 999_999, 1) for t in range(0, 1_000_000, 7))
    exact = dist_point_segment((-1, 1), (0, 0), (10, 0))
    assert exact == pytest.approx(math.sqrt(2), abs=1e-12)
    assert abs(exact - sampled) < 1e-6


def test_non_finite_input_rejected():
    with pytest.raises(InvalidGeometry):
        dist_point_segment((math.nan, 0), (0, 0), (1, 0))


@given(points, points, points)
def test_segment_distance_symmetric_and_bounded(p, a, b):
    d = dist_point_segment(p, a, b)
    assert d == pytest.approx(dist_point_segment(p, b, a), abs=1e-9)
    assert d <= min(math.dist(p, a), math.dist(p, b)) + 1e-9


@given(points, points, st.floats(0, 1))
def test_points_on_segment_have_zero_distance(a, b, t):
    p = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    assert dist_point_segment(p, a, b) <= EPS * max(1.0, abs(a.x), abs(a.y), abs(b.x), abs(b.y))


# ---------------------------------------------------------------- lines


def test_projection_onto_x_axis():
    assert project_point_line((3, 7), X_AXIS) == pytest.approx((3, 0))


def test_projection_of_point_on_line_is_identity():
    line = Line.make((1, 2), 0.7)
    p = Point(1 + 5 * math.cos(0.7), 2 + 5 * math.sin(0.7))
    assert project_point_line(p, line) == pytest.approx(p, abs=1e-12)


def test_projection_onto_diagonal_matches_numeric_minimisation():
    line = Line.make((0, 0), math.pi / 4)
    q = project_point_line((2, 0), line)
    best = min((math.hypot(2 - s, s), s) for s in (i / 10**5 for i in range(-10**5, 3 * 10**5)))[1]
    assert q == pytest.approx((1, 1), abs=1e-12)
    assert abs(q.x - best) < 1e-4


@given(points, points, angles)
def test_projection_is_orthogonal(p, anchor, theta):
    line = Line.make(anchor, theta)
    q = project_point_line(p, line)
    scale = max(1.0, abs(p.x), abs(p.y), abs(anchor.x), abs(anchor.y))
    assert abs(line.signed_distance(q)) <= 10 * EPS * scale
    assert abs((p - q).dot(line.direction)) <= 10 * EPS * scale


def test_axis_intersection():
    assert line_intersection(X_AXIS, Y_AXIS) == pytest.approx((0, 0))


def test_diagonal_intersection():
    l1 = Line.make((0, 0), math.pi / 4)
    l2 = Line.through((0, 2), (2, 0))
    assert line_intersection(l1, l2) == pytest.approx((1, 1))


def test_parallel_lines():
    assert line_intersection(Line.make((0, 1), 0.0), Line.make((0, 3), 0.0)) is PARALLEL


def test_coincident_lines_report_parallel():
    assert line_intersection(Line.make((0, 1), 0.0), Line.make((5, 1), math.pi)) is PARALLEL


@given(points, angles)
def test_canonical_form_is_stable(anchor, theta):
    line = Line.make(anchor, theta)
    again = line.canonical()
    assert 0.0 <= line.angle < math.pi
    assert again.same_as(line)
    assert Line.make(anchor, theta + math.pi).same_as(line)


@given(points, angles, angles)
def test_intersection_lies_on_both_lines(anchor, t1, t2):
    l1, l2 = Line.make(anchor, t1), Line.make((anchor.x + 3, anchor.y - 1), t2)
    q = line_intersection(l1, l2)
    if q is PARALLEL:
        return
    gap = abs(math.sin(l1.angle - l2.angle))
    tol = 1e-9 * max(1.0, abs(q.x), abs(q.y)) / max(gap, 1e-6)
    assert abs(l1.signed_distance(q)) <= tol
    assert abs(l2.signed_distance(q)) <= tol


# ---------------------------------------------------------------- half-planes


def test_halfplane_examples():
    right = HalfPlane(Y_AXIS, "right")
    assert halfplane_contains(right, (1, 0))
    assert halfplane_contains(right, (0, 5))
    assert not halfplane_contains(HalfPlane(X_AXIS, "up"), (0, -0.001))


def test_side_must_match_boundary():
    with pytest.raises(InvalidGeometry):
        HalfPlane(X_AXIS, "right")
    with pytest.raises(InvalidGeometry):
        HalfPlane(Y_AXIS, "up")


@given(points, points, angles)
def test_halfplane_and_complement_cover_the_plane(p, anchor, theta):
    n = (math.cos(theta), math.sin(theta))
    h = HalfPlane.from_normal(anchor, n)
    a, b = h.contains(p), h.complement().contains(p)
    assert a or b
    if a and b:
        assert abs(h.signed_distance(p)) <= EPS


# ---------------------------------------------------------------- angular hints


def test_upper_half_plane_hint():
    # clockwise from the ray towards (-1, 0) to the ray towards (1, 0) sweeps through (0, 1)
    hint = AngularHint.from_rays((0, 0), (-1, 0), (1, 0))
    assert hint.sweep == pytest.approx(math.pi)
    assert angle_contains(hint, (0, 3))
    assert not angle_contains(hint, (0, -3))


def test_clockwise_order_of_rays_matters():
    hint = AngularHint.from_rays((0, 0), (1, 0), (-1, 0))
    assert angle_contains(hint, (0, -3))
    assert not angle_contains(hint, (0, 3))


def test_vertex_is_ambiguous():
    hint = AngularHint((1, 1), 0.0, math.pi)
    with pytest.raises(AmbiguousAtVertex):
        hint.contains((1, 1))
    assert hint.contains_or_vertex((1, 1))


def test_three_quarter_hint_matches_rotation_count_oracle():
    rng = random.Random(5)
    hint = AngularHint(Point(0, 0), math.pi / 2, 1.5 * math.pi)
    for _ in range(100):
        p = (rng.uniform(-10, 10), rng.uniform(-10, 10))
        off = cw_offset(hint.start, p)
        if min(abs(off - hint.sweep), abs(off), abs(off - 2 * math.pi)) < 1e-9:
            continue
        assert angle_contains(hint, p) == (off <= hint.sweep)


@given(points, angles, st.floats(0.01, 2 * math.pi - 0.01), points)
def test_hint_and_complement_are_exclusive_off_the_rays(v, start, sweep, p):
    hint = AngularHint(v, start % (2 * math.pi), sweep)
    if math.dist(p, v) < 1e-3 or hint.on_boundary(p, 1e-6 * max(1.0, math.dist(p, v))):
        return
    assert angle_contains(hint, p) != angle_contains(hint.complement(), p)


def test_sweep_must_be_proper():
    with pytest.raises(InvalidGeometry):
        AngularHint((0, 0), 0.0, 0.0)
    with pytest.raises(InvalidGeometry):
        AngularHint((0, 0), 0.0, 2 * math.pi)


@given(points, angles)
def test_half_plane_hint_round_trip(v, theta):
    h = HalfPlane.from_normal(v, (math.cos(theta), math.sin(theta)))
    back = h.as_hint(v).as_halfplane()
    assert back.side == h.side
    assert back.boundary.same_as(h.boundary, 1e-9)


# ---------------------------------------------------------------- isometries


def test_quarter_turn_and_reflection_examples():
    assert rotate_about((1, 0), (0, 0), 1) == pytest.approx((0, 1))
    assert reflect_vertical((3, 2), 0.0) == (-3, 2)


def test_rotation_round_trip():
    rng = random.Random(1)
    for _ in range(1000):
        p = (rng.uniform(-100, 100), rng.uniform(-100, 100))
        c = (rng.uniform(-100, 100), rng.uniform(-100, 100))
        q = rng.randrange(4)
        back = rotate_about(rotate_about(p, c, q), c, (4 - q) % 4)
        assert math.dist(back, p) <= 1e-12 * 100


def test_quarter_turns_out_of_range():
    with pytest.raises(InvalidGeometry):
        rotate_about((1, 0), (0, 0), 4)


@given(points, coord)
def test_reflection_is_an_involution(p, axis):
    assert reflect_vertical(reflect_vertical(p, axis), axis) == pytest.approx(p, abs=1e-9)


# ---------------------------------------------------------------- rectangles


def test_straight_rect_corners_clockwise_from_north_west():
    r = StraightRect(0, 4, 0, 2)
    assert r.corners() == ((0, 2), (4, 2), (4, 0), (0, 0))
    assert r.perimeter == 12


def test_degenerate_rectangle_rejected():
    with pytest.raises(InvalidGeometry):
        StraightRect(1, 1, 0, 2)


def test_rotated_rect_from_corners():
    c = [(0, 0), (2, 2), (1, 3), (-1, 1)]
    r = Rect.from_corners(c)
    assert r.half_u == pytest.approx(math.sqrt(2))
    assert r.half_v == pytest.approx(math.sqrt(2) / 2)
    for p in c:
        assert r.contains(p, 1e-9)
    assert not r.contains((2, 0))
