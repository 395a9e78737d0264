"""Brute-force ground truth: exhaustive language samples and bounded equivalence.

Everything here enumerates words; nothing looks inside a construction.  A
sample is the exact set of accepted words within a shape bound, so set
operations on samples give the expected language of a construction without
trusting it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Union

from .grid import Word2D, enumerate_words, format_word, reverse_rows, row_concat, shapes, word_order_key
from .machines import Machine
from .simulate import accepts

DEFAULT_BUDGET = 2**16


class BudgetExceeded(ValueError):
    pass


def word_budget() -> int:
    """Per-shape word-count cap; ``GRIDFA_BUDGET`` overrides the default."""
    raw = os.environ.get("GRIDFA_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class Bounds:
    max_rows: int
    max_cols: int

    def shapes(self):
        return shapes(self.max_rows, self.max_cols)

    def contains(self, w: Word2D) -> bool:
        return w.m <= self.max_rows and w.n <= self.max_cols


@dataclass(frozen=True)
class LanguageSample:
    alphabet: tuple[str, ...]
    bounds: Bounds
    words: frozenset[Word2D]

    def __contains__(self, w):
        return w in self.words

    def __len__(self):
        return len(self.words)

    def sorted(self) -> list[Word2D]:
        return sorted(self.words, key=word_order_key(self.alphabet))

    def export(self) -> str:
        """Word file blocks, one per word, separated by blank lines."""
        return "\n".join(format_word(w) for w in self.sorted())


def _as_bounds(bounds) -> Bounds:
    if isinstance(bounds, Bounds):
        return bounds
    return Bounds(*bounds)


def all_words(alphabet, bounds, budget: int | None = None):
    """Every word within bounds in enumeration order (smaller shapes first)."""
    bounds = _as_bounds(bounds)
    cap = word_budget() if budget is None else budget
    for m, n in bounds.shapes():
        if len(alphabet) ** (m * n) > cap:
            raise BudgetExceeded(f"{len(alphabet)}^{m * n} words of shape {m}x{n} exceed budget {cap}")
    for m, n in bounds.shapes():
        yield from enumerate_words(alphabet, m, n)


Language = Union[Machine, LanguageSample, Callable[[Word2D], bool]]


def membership(lang: Language) -> Callable[[Word2D], bool]:
    if isinstance(lang, Machine):
        return lambda w: accepts(lang, w)
    if isinstance(lang, LanguageSample):
        return lambda w: w in lang.words
    return lang


def language_sample(lang: Language, bounds, alphabet=None) -> LanguageSample:
    """Exact set of accepted words within bounds."""
    bounds = _as_bounds(bounds)
    if alphabet is None:
        if not isinstance(lang, (Machine, LanguageSample)):
            raise ValueError("an alphabet is required for predicate languages")
        alphabet = lang.alphabet
    if isinstance(lang, LanguageSample):
        _check_covers(lang, bounds)
    member = membership(lang)
    words = frozenset(w for w in all_words(alphabet, bounds) if member(w))
    return LanguageSample(tuple(alphabet), bounds, words)


def _check_covers(s: LanguageSample, bounds: Bounds) -> None:
    if s.bounds.max_rows < bounds.max_rows or s.bounds.max_cols < bounds.max_cols:
        raise ValueError(f"sample bounds {s.bounds} do not cover {bounds}")


def _check_alphabets(*samples: LanguageSample) -> None:
    if len({frozenset(s.alphabet) for s in samples}) > 1:
        raise ValueError("incompatible alphabets: " + ", ".join(str(list(s.alphabet)) for s in samples))


def expected_sample(op: str, *samples: LanguageSample, bounds=None) -> LanguageSample:
    """Set-level result of ``op`` on samples, restricted to ``bounds``.

    ``row_concat`` needs its operands sampled one row lower than the result
    bound (each operand has at least one row).
    """
    _check_alphabets(*samples)
    first = samples[0]
    bounds = _as_bounds(bounds) if bounds is not None else first.bounds
    alphabet = first.alphabet
    if op == "union":
        a, b = samples
        words = {w for w in a.words | b.words if bounds.contains(w)}
    elif op == "complement":
        (a,) = samples
        _check_covers(a, bounds)
        words = {w for w in all_words(alphabet, bounds) if w not in a.words}
    elif op == "reversal":
        (a,) = samples
        words = {reverse_rows(w) for w in a.words if bounds.contains(w)}
    elif op == "row_concat":
        a, b = samples
        lower = Bounds(bounds.max_rows - 1, bounds.max_cols)
        _check_covers(a, lower)
        _check_covers(b, lower)
        by_width: dict[int, list[Word2D]] = {}
        for w in b.words:
            by_width.setdefault(w.n, []).append(w)
        words = {
            row_concat(v, w)
            for v in a.words
            for w in by_width.get(v.n, ())
            if v.m + w.m <= bounds.max_rows and v.n <= bounds.max_cols
        }
    else:
        raise ValueError(f"unknown operation {op!r}")
    return LanguageSample(alphabet, bounds, frozenset(words))


@dataclass(frozen=True)
class Equal:
    checked: int

    def __bool__(self):
        return True

    def __str__(self):
        return "equal"


@dataclass(frozen=True)
class Counterexample:
    word: Word2D
    left: bool
    right: bool

    def __bool__(self):
        return False

    def __str__(self):
        side = "left" if self.left else "right"
        return f"counterexample {self.word} (accepted only by {side})"


def equivalence(a: Language, b: Language, bounds, alphabet=None) -> Equal | Counterexample:
    """Compare memberships on every word within bounds.

    Returns the first disagreeing word in enumeration order, so the reported
    counterexample is the smallest one.
    """
    bounds = _as_bounds(bounds)
    if alphabet is None:
        for lang in (a, b):
            if isinstance(lang, (Machine, LanguageSample)):
                alphabet = lang.alphabet
                break
        else:
            raise ValueError("an alphabet is required when comparing two predicates")
    for lang in (a, b):
        if isinstance(lang, (Machine, LanguageSample)) and set(lang.alphabet) != set(alphabet):
            raise ValueError(f"incompatible alphabets: {list(lang.alphabet)} vs {list(alphabet)}")
        if isinstance(lang, LanguageSample):
            _check_covers(lang, bounds)
    ma, mb = membership(a), membership(b)
    count = 0
    for w in all_words(alphabet, bounds):
        x, y = ma(w), mb(w)
        if x != y:
            return Counterexample(w, x, y)
        count += 1
    return Equal(count)
