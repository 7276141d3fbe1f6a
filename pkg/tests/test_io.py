import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reebspace.generators import generate
from reebspace.io import ParseError, parse_tetfield, write_tetfield
from reebspace.mesh import TetField, validate_manifold

from conftest import s4_mesh

S4_TEXT = """tetfield 1
5 5
0 0 0 0 0.3
1 0 0 1 2.9
0 1 0 2 1.7
0 0 1 3 0.1
1 1 1 4 4.4
0 1 2 3
0 1 2 4
0 1 3 4
0 2 3 4
1 2 3 4
"""


def test_minimal_file():
    m = parse_tetfield(S4_TEXT.encode())
    assert (m.n_v, m.n_T) == (5, 5)
    assert validate_manifold(m).ok
    assert m.f2[4] == 4.4


@pytest.mark.parametrize("args", [("s4boundary", 1, "linear"), ("s4boundary", 1, "cosine"),
                                  ("torus3", 3, "cosine"), ("torus3", 4, "fig1"),
                                  ("torus3", 4, "fig2"), ("torus3", 4, "fig3")])
def test_round_trip_is_byte_identical(args):
    m = generate(*args)
    data = write_tetfield(m)
    m2 = parse_tetfield(data)
    assert write_tetfield(m2) == data
    assert np.array_equal(m.tets, m2.tets)
    for a, b in ((m.f1, m2.f1), (m.f2, m2.f2), (m.positions, m2.positions)):
        assert a.tobytes() == b.tobytes()


finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(finite, min_size=10, max_size=10), st.lists(finite, min_size=15, max_size=15))
def test_values_round_trip_exactly(vals, pos):
    m = s4_mesh(vals[:5], vals[5:])
    m = TetField(np.array(pos).reshape(5, 3), m.f1, m.f2, m.tets)
    m2 = parse_tetfield(write_tetfield(m))
    assert m2.f1.tobytes() == m.f1.tobytes() and m2.f2.tobytes() == m.f2.tobytes()
    assert m2.positions.tobytes() == m.positions.tobytes()


def _err(text):
    with pytest.raises(ParseError) as info:
        parse_tetfield(text.encode())
    return info.value


def test_out_of_range_tet_id():
    bad = S4_TEXT.replace("1 2 3 4\n", "1 2 3 5\n")
    e = _err(bad)
    assert e.line == 12 and e.column == 7
    assert "out of range" in str(e)


def test_nan_and_inf_rejected():
    assert _err(S4_TEXT.replace("0 0 1 3 0.1", "0 0 1 nan 0.1")).line == 6
    e = _err(S4_TEXT.replace("1 1 1 4 4.4", "1 1 1 4 inf"))
    assert (e.line, e.column) == (7, 9)


def test_duplicate_tet():
    bad = S4_TEXT.replace("1 2 3 4\n", "3 2 1 0\n")
    e = _err(bad)
    assert e.line == 12 and "duplicate" in str(e).lower()


def test_header_and_counts():
    assert _err("tetfiled 1\n0 0\n").line == 1
    assert _err("tetfield 2\n0 0\n").column == 10
    assert _err("tetfield 1\n5\n").line == 2
    assert "end of file" in str(_err("tetfield 1\n5 5\n0 0 0 0 0\n"))
    assert _err(S4_TEXT + "0 1 2 3\n").line == 13


def test_bad_tokens():
    e = _err(S4_TEXT.replace("0 1 0 2 1.7", "0 1 0 two 1.7"))
    assert (e.line, e.column) == (5, 7)
    assert _err(S4_TEXT.replace("0 1 2 4\n", "0 1 2\n")).line == 9
    assert _err(S4_TEXT.replace("0 1 2 4\n", "0 1 1 4\n")).line == 9


def test_comments_and_blank_lines():
    text = "# dataset\n\n" + S4_TEXT.replace("5 5\n", "5 5\n\n# vertices\n")
    assert parse_tetfield(text).n_T == 5


def test_locale_independent_decimal():
    assert _err(S4_TEXT.replace("0 1 0 2 1.7", "0 1 0 2 1,7")).column == 9
