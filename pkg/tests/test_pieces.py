import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvewind.geometry import Point
from curvewind.pieces import ArcPiece, CubicPiece, LinePiece

coord = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)


def _dense_speeds(piece, n=20001):
    us = np.linspace(0.0, 1.0, n)
    vs = np.array([piece.velocity(float(u)).as_tuple() for u in us])
    return np.hypot(vs[:, 0], vs[:, 1])


def _dense_points(piece, n=2001):
    return piece.points(np.linspace(0.0, 1.0, n))


def test_line_piece_eval():
    p = LinePiece(Point(1.0, 2.0), Point(3.0, -2.0))
    assert p.point(0.0) == Point(1.0, 2.0)
    assert p.point(1.0) == Point(3.0, -2.0)
    assert p.point(0.5) == Point(2.0, 0.0)
    assert p.velocity(0.3) == Point(2.0, -4.0)
    lo, hi = p.speed_bounds()
    assert lo == hi == pytest.approx(math.hypot(2.0, 4.0))
    with pytest.raises(ValueError):
        LinePiece(Point(0.0, 0.0), Point(0.0, 0.0))


def test_arc_piece_eval_and_bounds():
    a = ArcPiece(Point(1.0, -1.0), 2.0, math.pi / 6, -math.pi / 2)
    s = a.point(0.0)
    assert s.dist(Point(1.0 + 2.0 * math.cos(math.pi / 6), -1.0 + 1.0)) < 1e-12
    lo, hi = a.speed_bounds()
    assert lo == hi == pytest.approx(2.0 * math.pi / 2)
    assert not a.is_full_turn
    assert ArcPiece(Point(0, 0), 1.0, 0.0, 2 * math.pi).is_full_turn
    with pytest.raises(ValueError):
        ArcPiece(Point(0, 0), 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        ArcPiece(Point(0, 0), 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        ArcPiece(Point(0, 0), 1.0, 0.0, 7.0)


def test_arc_bbox_spans_cardinals():
    # sweep through the top cardinal point: bbox must reach the top
    a = ArcPiece(Point(0.0, 0.0), 1.0, math.pi / 4, math.pi / 2)
    x0, y0, x1, y1 = a.bbox()
    assert y1 == pytest.approx(1.0)
    pts = _dense_points(a)
    assert pts[:, 0].min() >= x0 - 1e-12
    assert pts[:, 1].max() <= y1 + 1e-12


def test_vectorised_points_match_scalar():
    pieces = [
        LinePiece(Point(0.0, 0.0), Point(2.0, 1.0)),
        ArcPiece(Point(0.5, 0.5), 1.5, 0.3, 2.0),
        CubicPiece(
            Point(0.0, 0.0), Point(1.0, 2.0), Point(2.0, -1.0), Point(3.0, 0.5)
        ),
    ]
    us = np.linspace(0.0, 1.0, 17)
    for piece in pieces:
        batch = piece.points(us)
        for u, row in zip(us, batch):
            assert piece.point(float(u)).dist(Point(*row)) < 1e-12


@given(coord, coord, coord, coord, coord, coord, coord, coord)
@settings(max_examples=80, deadline=None)
def test_cubic_speed_bounds_enclose_dense_oracle(x0, y0, x1, y1, x2, y2, x3, y3):
    piece = CubicPiece(
        Point(x0, y0), Point(x1, y1), Point(x2, y2), Point(x3, y3)
    )
    speeds = _dense_speeds(piece, 4001)
    lo, hi = piece.speed_bounds()
    assert lo <= speeds.min() + 1e-9
    assert hi >= speeds.max() - 1e-9
    assert lo >= 0.0


@given(coord, coord, coord, coord, coord, coord, coord, coord)
@settings(max_examples=60, deadline=None)
def test_cubic_bbox_contains_curve(x0, y0, x1, y1, x2, y2, x3, y3):
    piece = CubicPiece(
        Point(x0, y0), Point(x1, y1), Point(x2, y2), Point(x3, y3)
    )
    bx0, by0, bx1, by1 = piece.bbox()
    pts = _dense_points(piece, 501)
    assert pts[:, 0].min() >= bx0 - 1e-9
    assert pts[:, 0].max() <= bx1 + 1e-9
    assert pts[:, 1].min() >= by0 - 1e-9
    assert pts[:, 1].max() <= by1 + 1e-9


def test_cubic_speed_lower_bound_zero_at_cusp():
    # coincident first controls force zero velocity at u = 0
    piece = CubicPiece(
        Point(0.0, 0.0), Point(0.0, 0.0), Point(1.0, 1.0), Point(2.0, 0.0)
    )
    lo, _ = piece.speed_bounds()
    assert lo == 0.0


def _similarity(theta, scale, dx, dy, flip=False):
    c, s = scale * math.cos(theta), scale * math.sin(theta)
    if flip:
        return (c, s, s, -c, dx, dy)
    return (c, -s, s, c, dx, dy)


@pytest.mark.parametrize("flip", [False, True])
def test_arc_similarity_transform_matches_pointwise(flip):
    a = ArcPiece(Point(0.4, -0.2), 1.3, 0.7, 1.9)
    m = _similarity(0.6, 1.7, 0.3, -0.8, flip)
    ta = a.transformed(m)
    us = np.linspace(0.0, 1.0, 33)
    for u in us:
        p = a.point(float(u))
        q = Point(
            m[0] * p.x + m[1] * p.y + m[4], m[2] * p.x + m[3] * p.y + m[5]
        )
        assert ta.point(float(u)).dist(q) < 1e-9
    if flip:
        assert ta.sweep == pytest.approx(-a.sweep)


def test_arc_rejects_non_similarity():
    a = ArcPiece(Point(0.0, 0.0), 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        a.transformed((2.0, 0.0, 0.0, 1.0, 0.0, 0.0))


def test_line_and_cubic_accept_general_affine():
    m = (2.0, 0.3, -0.1, 1.0, 0.5, 0.5)
    l = LinePiece(Point(0.0, 1.0), Point(1.0, 1.0))
    tl = l.transformed(m)
    assert tl.start.dist(Point(0.3 + 0.5, 1.0 + 0.5)) < 1e-12
    c = CubicPiece(Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1))
    tc = c.transformed(m)
    for u in (0.0, 0.37, 1.0):
        p = c.point(u)
        q = Point(
            m[0] * p.x + m[1] * p.y + m[4], m[2] * p.x + m[3] * p.y + m[5]
        )
        assert tc.point(u).dist(q) < 1e-12


def test_to_row_round_trips_kind_data():
    line = LinePiece(Point(0.0, 1.0), Point(2.0, 3.0))
    assert line.to_row()[:4] == pytest.approx([0.0, 1.0, 2.0, 3.0])
    arc = ArcPiece(Point(1.0, 2.0), 3.0, 0.5, -1.5)
    assert arc.to_row()[:5] == pytest.approx([1.0, 2.0, 3.0, 0.5, -1.5])
