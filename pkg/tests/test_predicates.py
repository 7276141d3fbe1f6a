from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reebspace.predicates import (DegenerateSegment, orient2d, point_in_triangle,
                                  segment_intersection)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
pt = st.tuples(coord, coord)


def exact_sign(a, b, c):
    a, b, c = [(Fraction(x), Fraction(y)) for x, y in (a, b, c)]
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def test_orient_basic():
    assert orient2d((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)) == 1
    assert orient2d((0.0, 0.0), (1.0, 0.0), (0.0, -1.0)) == -1
    assert orient2d((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)) == 0


def test_orient_near_degenerate_is_exact():
    # 0.1 + 0.2 style rounding: points almost on the line y = x
    a, b = (0.1, 0.1), (0.3, 0.3)
    c = (0.2, 0.2 + 2 ** -55)
    assert orient2d(a, b, c) == exact_sign(a, b, c)


@given(pt, pt, pt)
def test_orient_matches_rational(a, b, c):
    assert orient2d(a, b, c) == exact_sign(a, b, c)


@given(pt, pt, pt)
def test_orient_antisymmetric(a, b, c):
    assert orient2d(a, b, c) == -orient2d(b, a, c) == orient2d(b, c, a)


def test_crossing_point():
    hit = segment_intersection((0, 0), (1, 1), (0, 1), (1, 0))
    assert hit.kind == "proper"
    assert hit.point == (Fraction(1, 2), Fraction(1, 2))
    assert hit.s == hit.t == Fraction(1, 2)


def test_parallel_and_shared_endpoint():
    assert segment_intersection((0, 0), (1, 0), (0, 1), (1, 1)).kind == "none"
    assert not segment_intersection((0, 0), (1, 1), (1, 1), (2, 0))
    assert segment_intersection((0, 0), (1, 1), (1, 1), (2, 0)).kind == "shared-endpoint"
    assert segment_intersection((0, 0), (2, 0), (1, 0), (3, 0)).kind == "collinear"
    assert segment_intersection((0, 0), (2, 0), (1, 0), (1, 1)).kind == "touching"


def test_degenerate_segment():
    with pytest.raises(DegenerateSegment):
        segment_intersection((0, 0), (0, 0), (0, 1), (1, 0))


@given(pt, pt, pt, pt)
def test_crossing_point_lies_on_both(p, q, r, s):
    if p == q or r == s:
        return
    hit = segment_intersection(p, q, r, s)
    if hit:
        assert 0 < hit.s < 1 and 0 < hit.t < 1
        assert orient2d(p, q, hit.point) == 0
        assert orient2d(r, s, hit.point) == 0


def test_point_in_triangle():
    a, b, c = (0, 0), (4, 0), (0, 4)
    assert point_in_triangle(a, b, c, (1, 1)) is True
    assert point_in_triangle(a, b, c, (5, 5)) is False
    assert point_in_triangle(a, b, c, (2, 0)) is None
    assert point_in_triangle(c, b, a, (1, 1)) is True
