import itertools

import pytest
from hypothesis import given, strategies as st

from gridfa.grid import (
    BORDER, Word2D, WordError, cell_at, enumerate_words, format_word, is_border,
    parse_word, reverse_rows, row_concat, shapes,
)

W = Word2D.from_str


def small_words(max_rows=3, max_cols=3, alphabet="01"):
    for m in range(1, max_rows + 1):
        for n in range(1, max_cols + 1):
            yield from enumerate_words(alphabet, m, n)


@pytest.mark.parametrize("coord, expected", [((1, 1), "1"), ((0, 1), "#"), ((2, 3), "#"), ((2, 2), "0")])
def test_cell_at(coord, expected):
    assert cell_at(W("11/10"), *coord) == expected


@pytest.mark.parametrize("coord", [(-1, 0), (4, 1), (1, 4), (0, -1)])
def test_cell_at_out_of_frame(coord):
    with pytest.raises(IndexError):
        cell_at(W("11/10"), *coord)


def test_border_iff_frame():
    for w in small_words(2, 3):
        for i in range(w.m + 2):
            for j in range(w.n + 2):
                assert (cell_at(w, i, j) == BORDER) == is_border(w, i, j)


def test_row_concat():
    assert row_concat(W("11/10"), W("01")) == W("11/10/01")
    assert row_concat(W("1"), W("1")) == W("1/1")
    with pytest.raises(WordError):
        row_concat(W("11"), W("0"))


def test_row_concat_associative():
    words = [w for w in small_words(2, 2)]
    for n in (1, 2):
        same = [w for w in words if w.n == n]
        for u, v, w in itertools.product(same, repeat=3):
            if u.m + v.m + w.m <= 4:
                assert row_concat(row_concat(u, v), w) == row_concat(u, row_concat(v, w))


def test_reverse_rows():
    assert reverse_rows(W("10/11")) == W("11/10")
    assert reverse_rows(W("0110")) == W("0110")
    for w in small_words():
        assert reverse_rows(reverse_rows(w)) == w


def test_reverse_antidistributes_over_concat():
    words = list(small_words(2, 2))
    for v, w in itertools.product(words, repeat=2):
        if v.n == w.n:
            assert reverse_rows(row_concat(v, w)) == row_concat(reverse_rows(w), reverse_rows(v))


def test_enumerate_counts():
    assert [str(w) for w in enumerate_words("01", 1, 1)] == ["0", "1"]
    assert len(list(enumerate_words("01", 2, 2))) == 16
    seen = set()
    for w in enumerate_words("01", 2, 3):
        assert w not in seen
        seen.add(w)
    assert len(seen) == 64
    assert len(set(enumerate_words("abc", 2, 2))) == 3 ** 4


def test_enumeration_order_is_row_major():
    words = [str(w) for w in enumerate_words("01", 2, 2)]
    assert words[:3] == ["00/00", "00/01", "00/10"]
    assert words[-1] == "11/11"


def test_shapes_small_first():
    assert shapes(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_empty_and_ragged_rejected():
    with pytest.raises(WordError):
        Word2D(())
    with pytest.raises(WordError):
        Word2D(("",))
    with pytest.raises(WordError):
        parse_word("11\n1")
    with pytest.raises(WordError):
        parse_word("1#\n10")


def test_codec():
    assert parse_word("11\n10") == Word2D(("11", "10"))
    assert parse_word("11\n10\n") == Word2D(("11", "10"))
    for w in small_words():
        assert parse_word(format_word(w)) == w
    with pytest.raises(WordError):
        parse_word("12", alphabet="01")


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.text(alphabet="ab", min_size=n, max_size=n), min_size=1, max_size=5)))
def test_codec_roundtrip_property(rows):
    w = Word2D(tuple(rows))
    assert parse_word(format_word(w)) == w
    assert reverse_rows(reverse_rows(w)) == w
