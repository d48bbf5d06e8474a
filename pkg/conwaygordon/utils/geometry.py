"""Exact rational geometry primitives.

This module provides functionality to:
- Do vector arithmetic on points with `fractions.Fraction` coordinates
- Intersect segments in 3-space and in the plane without rounding
- Clip a segment against a closed triangle in 3-space

Every predicate here is decided exactly. Callers build points from integers or
`Fraction`s; floats must never reach these functions.
"""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

Point3 = Tuple[Fraction, Fraction, Fraction]
Point2 = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_point(coords: Sequence) -> Point3:
    """Convert a coordinate triple to an exact point.

    Args:
        coords: Three ints, Fractions or ``p/q`` strings

    Returns:
        Tuple of three Fractions

    Raises:
        ValueError: If there are not exactly three coordinates or one is a float
    """
    if len(coords) != 3:
        raise ValueError(f"Expected 3 coordinates, got {len(coords)}")
    point = []
    for c in coords:
        if isinstance(c, float):
            raise ValueError(f"Float coordinate {c!r} is not allowed; use Fraction")
        point.append(Fraction(c))
    return tuple(point)


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def scale(a: Sequence[Fraction], k: Fraction) -> tuple:
    return tuple(x * k for x in a)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def cross(a: Point3, b: Point3) -> Point3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def cross2(a: Point2, b: Point2) -> Fraction:
    """Signed area of the parallelogram spanned by two planar vectors."""
    return a[0] * b[1] - a[1] * b[0]


def lerp(p: Sequence[Fraction], q: Sequence[Fraction], t: Fraction) -> tuple:
    return tuple(x + (y - x) * t for x, y in zip(p, q))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(c == 0 for c in v)


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def point_on_segment(p: Point3, a: Point3, b: Point3) -> bool:
    """Return whether ``p`` lies on the closed segment ``ab``."""
    d = sub(b, a)
    r = sub(p, a)
    if not is_zero(cross(d, r)):
        return False
    t = dot(r, d)
    return ZERO <= t <= dot(d, d)


def segment_intersection_3d(
    p0: Point3, p1: Point3, q0: Point3, q1: Point3
) -> Optional[Tuple[str, Optional[Point3]]]:
    """Intersect two closed segments in 3-space.

    Args:
        p0, p1: Endpoints of the first segment
        q0, q1: Endpoints of the second segment

    Returns:
        None if the segments are disjoint, ``("point", P)`` if they meet in the
        single point P, or ``("overlap", None)`` if they share a sub-segment of
        positive length.
    """
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(q0, p0)
    n = cross(d1, d2)
    if not is_zero(n):
        if dot(r, n) != 0:
            return None
        nn = dot(n, n)
        s = dot(cross(r, d2), n) / nn
        t = dot(cross(r, d1), n) / nn
        if ZERO <= s <= ONE and ZERO <= t <= ONE:
            return ("point", lerp(p0, p1, s))
        return None

    # Parallel. Only collinear segments can meet.
    if not is_zero(cross(r, d1)):
        return None
    dd = dot(d1, d1)
    t0 = dot(r, d1) / dd
    t1 = dot(sub(q1, p0), d1) / dd
    lo = max(min(t0, t1), ZERO)
    hi = min(max(t0, t1), ONE)
    if lo > hi:
        return None
    if lo == hi:
        return ("point", lerp(p0, p1, lo))
    return ("overlap", None)


def segment_params_2d(
    p0: Point2, p1: Point2, q0: Point2, q1: Point2
) -> Optional[Tuple[Fraction, Fraction]]:
    """Intersect two closed planar segments.

    Returns:
        None when the segments are disjoint, otherwise the parameters ``(s, t)``
        of the unique common point along each segment

    Raises:
        ValueError: If the segments are collinear and overlap, so that no unique
            intersection parameter exists
    """
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(q0, p0)
    den = cross2(d1, d2)
    if den != 0:
        s = cross2(r, d2) / den
        t = cross2(r, d1) / den
        if ZERO <= s <= ONE and ZERO <= t <= ONE:
            return (s, t)
        return None
    if cross2(r, d1) != 0:
        return None
    dd = dot(d1, d1)
    if dd == 0:
        raise ValueError("Degenerate planar segment")
    t0 = dot(r, d1) / dd
    t1 = dot(sub(q1, p0), d1) / dd
    if max(min(t0, t1), ZERO) <= min(max(t0, t1), ONE):
        raise ValueError("Collinear overlapping planar segments")
    return None


def segment_triangle_params(
    p0: Point3, p1: Point3, a: Point3, b: Point3, c: Point3
) -> Optional[Tuple[Fraction, Fraction]]:
    """Clip the segment ``p0 p1`` against the closed triangle ``abc``.

    Args:
        p0, p1: Segment endpoints
        a, b, c: Triangle corners

    Returns:
        None if the segment misses the triangle, otherwise the parameter
        interval ``(t_lo, t_hi)`` of the part of the segment inside it

    Raises:
        ValueError: If the triangle is degenerate
    """
    n = cross(sub(b, a), sub(c, a))
    if is_zero(n):
        raise ValueError("Degenerate triangle")
    d = sub(p1, p0)
    dp = dot(n, sub(p0, a))
    dd = dot(n, d)
    corners = ((a, b), (b, c), (c, a))

    if dd != 0:
        t = -dp / dd
        if not ZERO <= t <= ONE:
            return None
        q = lerp(p0, p1, t)
        for e0, e1 in corners:
            if dot(n, cross(sub(e1, e0), sub(q, e0))) < 0:
                return None
        return (t, t)

    if dp != 0:
        return None

    # Coplanar: Cyrus-Beck clipping against the three inward half-planes.
    lo, hi = ZERO, ONE
    for e0, e1 in corners:
        edge = sub(e1, e0)
        f0 = dot(n, cross(edge, sub(p0, e0)))
        f1 = dot(n, cross(edge, d))
        if f1 == 0:
            if f0 < 0:
                return None
            continue
        t = -f0 / f1
        if f1 > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        if lo > hi:
            return None
    return (lo, hi)
