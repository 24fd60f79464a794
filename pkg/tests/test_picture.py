import itertools

import pytest
from hypothesis import given

from dagpic.picture import (BORDER, EMPTY_PICTURE, Picture, PictureFormatError, boundary,
                            enumerate_pictures, parse_picture, picture_order_key, render_picture,
                            shapes)

from strategies import pictures


def test_boundary_of_empty_picture_is_all_border():
    bp = boundary(EMPTY_PICTURE)
    assert (bp.rows, bp.cols) == (2, 2)
    assert bp.cells == ((BORDER, BORDER), (BORDER, BORDER))


def test_boundary_of_single_cell():
    bp = boundary(Picture.from_string("a"))
    assert bp.cells == (("#", "#", "#"), ("#", "a", "#"), ("#", "#", "#"))


@given(pictures(max_rows=4, max_cols=4))
def test_boundary_frame_count(p):
    bp = boundary(p)
    m, n = p.dims
    assert (bp.rows, bp.cols) == (m + 2, n + 2)
    frame = sum(1 for row in bp.cells for s in row if s == BORDER)
    assert frame == 2 * (m + 2) + 2 * n
    assert bp.strip() == p
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            assert bp[i, j] == p[i, j]


def test_two_by_three_frame():
    bp = boundary(Picture.from_string("abb/bba"))
    assert (bp.rows, bp.cols) == (4, 5)


def test_parse_single_cell():
    assert parse_picture("1 1\na") == Picture((("a",),))


def test_parse_empty_picture():
    assert parse_picture("0 0\n") == EMPTY_PICTURE


@given(pictures(alphabet=("a", "b", "xy"), max_rows=4, max_cols=4))
def test_render_parse_round_trip(p):
    assert parse_picture(render_picture(p)) == p


@pytest.mark.parametrize("text, line, token", [
    ("2 2\na b\na", 3, "a"),
    ("1 1\n#", 2, "#"),
    ("one 1\na", 1, "one 1"),
    ("1\na", 1, "1"),
    ("0 2\n", 1, "0 2"),
])
def test_parse_errors_name_line_and_token(text, line, token):
    with pytest.raises(PictureFormatError) as info:
        parse_picture(text, source="p.pic")
    assert info.value.line == line
    assert info.value.token == token
    assert str(info.value).startswith(f"p.pic:{line}")


def test_picture_invariants():
    with pytest.raises(ValueError):
        Picture((("a",), ("a", "b")))
    with pytest.raises(ValueError):
        Picture(((),))
    with pytest.raises(ValueError):
        Picture((("#",),))


def test_enumeration_count_two_by_two():
    # Λ, 1x1 (2), 1x2 (4), 2x1 (4), 2x2 (16)
    assert sum(1 for _ in enumerate_pictures("ab", 2, 2)) == 27


def test_enumeration_is_duplicate_free_and_ordered():
    pics = list(enumerate_pictures("ba", 2, 3))
    assert len(set(pics)) == len(pics)
    keys = [picture_order_key(p, "ab") for p in pics]
    assert keys == sorted(keys)
    assert pics[0] == EMPTY_PICTURE


def test_enumeration_covers_every_picture():
    got = set(enumerate_pictures("ab", 2, 2))
    for m, n in itertools.product(range(1, 3), repeat=2):
        for flat in itertools.product("ab", repeat=m * n):
            assert Picture(tuple(flat[i * n:(i + 1) * n] for i in range(m))) in got


def test_shapes_order():
    assert shapes(2, 2) == [(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_from_string_and_indexing():
    p = Picture.from_string("ab/ba")
    assert p[1, 2] == "b" and p[2, 2] == "a"
    with pytest.raises(IndexError):
        p[0, 1]
