"""Exact geometric predicates in the plane.

Inputs may be Python floats or :class:`fractions.Fraction`.  Float inputs go
through a static error filter first; only near-degenerate cases fall back to
rational arithmetic, so the returned sign is always exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

# Shewchuk's ccwerrboundA = (3 + 16 eps) eps with eps = 2^-53
_CCW_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53

Point = Tuple[float, float]


def _exact_orient(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient2d(a, b, c) -> int:
    """Sign of the signed area of triangle ``abc``.

    Returns +1 when ``c`` lies to the left of the directed line ``a -> b``,
    -1 when it lies to the right and 0 when the three points are collinear.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    if type(ax) is float and type(ay) is float and type(bx) is float and \
            type(by) is float and type(cx) is float and type(cy) is float:
        left = (ax - cx) * (by - cy)
        right = (ay - cy) * (bx - cx)
        det = left - right
        bound = _CCW_ERRBOUND * (abs(left) + abs(right))
        if det > bound:
            return 1
        if -det > bound:
            return -1
    return _exact_orient(ax, ay, bx, by, cx, cy)


class DegenerateSegment(ValueError):
    """A range segment collapsed to a point."""


@dataclass(frozen=True)
class SegmentIntersection:
    """Outcome of :func:`segment_intersection`.

    ``kind`` is one of ``"none"``, ``"proper"``, ``"shared-endpoint"``,
    ``"touching"`` or ``"collinear"``.  For a proper crossing ``point`` is
    the exact intersection and ``s``/``t`` are the exact parameters along the
    first and second segment.
    """

    kind: str
    point: Optional[Tuple[Fraction, Fraction]] = None
    s: Optional[Fraction] = None
    t: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.kind == "proper"


def segment_intersection(p, q, r, s) -> SegmentIntersection:
    """Classify the intersection of segments ``pq`` and ``rs`` exactly."""
    if tuple(p) == tuple(q) or tuple(r) == tuple(s):
        raise DegenerateSegment("segment endpoints coincide")
    if tuple(p) in (tuple(r), tuple(s)) or tuple(q) in (tuple(r), tuple(s)):
        return SegmentIntersection("shared-endpoint")
    o1 = orient2d(p, q, r)
    o2 = orient2d(p, q, s)
    o3 = orient2d(r, s, p)
    o4 = orient2d(r, s, q)
    if o1 == 0 and o2 == 0:
        # collinear supports: overlap test on the dominant axis
        axis = 0 if p[0] != q[0] else 1
        lo1, hi1 = sorted((Fraction(p[axis]), Fraction(q[axis])))
        lo2, hi2 = sorted((Fraction(r[axis]), Fraction(s[axis])))
        if hi1 < lo2 or hi2 < lo1:
            return SegmentIntersection("none")
        return SegmentIntersection("collinear")
    if o1 * o2 > 0 or o3 * o4 > 0:
        return SegmentIntersection("none")
    if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
        return SegmentIntersection("touching")
    px, py = Fraction(p[0]), Fraction(p[1])
    qx, qy = Fraction(q[0]), Fraction(q[1])
    rx, ry = Fraction(r[0]), Fraction(r[1])
    sx, sy = Fraction(s[0]), Fraction(s[1])
    d1x, d1y = qx - px, qy - py
    d2x, d2y = sx - rx, sy - ry
    denom = d1x * d2y - d1y * d2x
    along1 = ((rx - px) * d2y - (ry - py) * d2x) / denom
    along2 = ((rx - px) * d1y - (ry - py) * d1x) / denom
    point = (px + along1 * d1x, py + along1 * d1y)
    return SegmentIntersection("proper", point, along1, along2)


def point_in_triangle(a, b, c, p) -> Optional[bool]:
    """Strict containment of ``p`` in the (non-degenerate) triangle ``abc``.

    Returns ``None`` when ``p`` lies exactly on the triangle boundary, which
    callers treat as a violated regularity precondition.
    """
    o = orient2d(a, b, c)
    if o == 0:
        return False
    s1 = orient2d(a, b, p) * o
    s2 = orient2d(b, c, p) * o
    s3 = orient2d(c, a, p) * o
    if s1 < 0 or s2 < 0 or s3 < 0:
        return False
    if s1 == 0 or s2 == 0 or s3 == 0:
        return None
    return True
