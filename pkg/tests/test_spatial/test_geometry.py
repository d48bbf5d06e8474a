"""Tests for the exact geometry helpers."""
from fractions import Fraction

import pytest
from conwaygordon.utils.geometry import (
    as_point,
    cross2,
    point_on_segment,
    segment_intersection_3d,
    segment_params_2d,
    segment_triangle_params,
    sign,
)

P = as_point

def Q(x, y):
    return (Fraction(x), Fraction(y))

@pytest.mark.spatial
def test_as_point():
    """Test exact point conversion."""
    assert P((1, "1/2", Fraction(3, 4))) == (Fraction(1), Fraction(1, 2), Fraction(3, 4))
    with pytest.raises(ValueError) as exc_info:
        P((1.5, 0, 0))
    assert "Float coordinate" in str(exc_info.value)
    with pytest.raises(ValueError):
        P((1, 2))

@pytest.mark.spatial
def test_sign_and_cross2():
    """Test planar orientation helpers."""
    assert cross2((1, 0), (0, 1)) == 1
    assert sign(Fraction(-3, 7)) == -1
    assert sign(Fraction(0)) == 0

@pytest.mark.spatial
def test_point_on_segment():
    """Test closed-segment membership."""
    a, b = P((0, 0, 0)), P((2, 2, 2))
    assert point_on_segment(P((1, 1, 1)), a, b)
    assert point_on_segment(a, a, b)
    assert not point_on_segment(P((3, 3, 3)), a, b)
    assert not point_on_segment(P((1, 1, 0)), a, b)

@pytest.mark.spatial
def test_segment_intersection_3d():
    """Test crossing, skew, touching and overlapping segments."""
    hit = segment_intersection_3d(P((0, 0, 0)), P((2, 0, 0)), P((1, -1, 0)), P((1, 1, 0)))
    assert hit == ("point", P((1, 0, 0)))
    assert segment_intersection_3d(P((0, 0, 0)), P((2, 0, 0)), P((1, -1, 1)), P((1, 1, 1))) is None
    touch = segment_intersection_3d(P((0, 0, 0)), P((1, 0, 0)), P((1, 0, 0)), P((2, 0, 0)))
    assert touch == ("point", P((1, 0, 0)))
    over = segment_intersection_3d(P((0, 0, 0)), P((2, 0, 0)), P((1, 0, 0)), P((3, 0, 0)))
    assert over == ("overlap", None)
    assert segment_intersection_3d(P((0, 0, 0)), P((1, 0, 0)), P((2, 0, 0)), P((3, 0, 0))) is None

@pytest.mark.spatial
def test_segment_params_2d():
    """Test planar intersection parameters."""
    assert segment_params_2d(Q(0, 0), Q(2, 0), Q(1, -1), Q(1, 3)) == (Fraction(1, 2), Fraction(1, 4))
    assert segment_params_2d(Q(0, 0), Q(1, 0), Q(0, 1), Q(1, 1)) is None
    with pytest.raises(ValueError) as exc_info:
        segment_params_2d(Q(0, 0), Q(2, 0), Q(1, 0), Q(3, 0))
    assert "Collinear" in str(exc_info.value)

@pytest.mark.spatial
def test_segment_triangle_params():
    """Test segment clipping against a triangle."""
    a, b, c = P((0, 0, 0)), P((4, 0, 0)), P((0, 4, 0))
    assert segment_triangle_params(P((1, 1, -1)), P((1, 1, 1)), a, b, c) == (Fraction(1, 2), Fraction(1, 2))
    assert segment_triangle_params(P((5, 5, -1)), P((5, 5, 1)), a, b, c) is None
    assert segment_triangle_params(P((-1, 1, 0)), P((5, 1, 0)), a, b, c) == (Fraction(1, 6), Fraction(2, 3))
    with pytest.raises(ValueError):
        segment_triangle_params(P((0, 0, 1)), P((0, 0, 2)), a, b, P((8, 0, 0)))
