"""Rectangular two-dimensional words and the word-level operations on them.

A word is stored as a tuple of equal-length row strings, one character per
symbol.  Coordinates are ``(row, col)``: data cells are 1-based, row ``0`` and
``m + 1`` and column ``0`` and ``n + 1`` form the ``#`` frame around the word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

BORDER = "#"


class WordError(ValueError):
    """Malformed word text or an operation undefined for the given words."""


@dataclass(frozen=True)
class Word2D:
    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise WordError("empty pictures are not supported")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise WordError(f"ragged rows: expected width {width}, got {len(r)}")
            if BORDER in r:
                raise WordError(f"reserved symbol {BORDER!r} inside word")

    @classmethod
    def from_str(cls, text: str) -> "Word2D":
        """Compact form used in tests and docs: ``"11/10"``."""
        return cls(tuple(text.split("/")))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def symbols(self) -> set[str]:
        return set("".join(self.rows))

    def __str__(self):
        return "/".join(self.rows)


def cell_at(w: Word2D, i: int, j: int) -> str:
    """Symbol under the head at ``(i, j)``; ``#`` anywhere on the frame."""
    if not (0 <= i <= w.m + 1 and 0 <= j <= w.n + 1):
        raise IndexError(f"coordinate ({i}, {j}) outside {w.m + 2}x{w.n + 2} frame")
    if i == 0 or j == 0 or i == w.m + 1 or j == w.n + 1:
        return BORDER
    return w.rows[i - 1][j - 1]


def is_border(w: Word2D, i: int, j: int) -> bool:
    return i in (0, w.m + 1) or j in (0, w.n + 1)


def row_concat(v: Word2D, w: Word2D) -> Word2D:
    """Stack ``v`` above ``w`` (no separator row)."""
    if v.n != w.n:
        raise WordError(f"row concatenation undefined for widths {v.n} and {w.n}")
    return Word2D(v.rows + w.rows)


def reverse_rows(w: Word2D) -> Word2D:
    """Invert row order, keeping each row's left-to-right content."""
    return Word2D(w.rows[::-1])


def enumerate_words(alphabet: Sequence[str], m: int, n: int) -> Iterator[Word2D]:
    """Every word of shape ``m x n``, row-major lexicographic by symbol index.

    The first cell is the most significant position, so for ``alphabet="01"``
    the order is the binary counting order of the row-concatenated string.
    """
    if m < 1 or n < 1:
        raise WordError("shape must be at least 1x1")
    if not alphabet:
        raise WordError("alphabet must be nonempty")
    rows = ["".join(t) for t in itertools.product(alphabet, repeat=n)]
    for combo in itertools.product(rows, repeat=m):
        yield Word2D(combo)


def shapes(max_rows: int, max_cols: int) -> list[tuple[int, int]]:
    """Shapes within bounds, smaller cell counts first, ties broken by rows."""
    out = [(m, n) for m in range(1, max_rows + 1) for n in range(1, max_cols + 1)]
    return sorted(out, key=lambda s: (s[0] * s[1], s[0], s[1]))


def word_order_key(alphabet: Sequence[str]):
    """Sort key matching the enumeration order across shapes."""
    index = {a: k for k, a in enumerate(alphabet)}

    def key(w: Word2D):
        return (w.m * w.n, w.m, w.n, tuple(index[c] for c in "".join(w.rows)))

    return key


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> Word2D:
    """Parse the word file format: one row per line, one character per symbol."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    if not lines or not lines[0]:
        raise WordError("empty word text")
    for ln in lines:
        if BORDER in ln:
            raise WordError(f"reserved symbol {BORDER!r} in word text")
        if not ln.isascii():
            raise WordError("word text must be 7-bit ASCII")
    if alphabet is not None:
        allowed = set(alphabet)
        bad = set("".join(lines)) - allowed
        if bad:
            raise WordError(f"symbols {sorted(bad)} not in alphabet {sorted(allowed)}")
    return Word2D(tuple(lines))


def format_word(w: Word2D) -> str:
    return "\n".join(w.rows) + "\n"
