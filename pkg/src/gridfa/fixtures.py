"""Concrete machines and languages used as ground truth, plus random machine pools."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .grid import Word2D
from .machines import Kind, Machine, Move, validate

R, CR, D, L = Move.R, Move.RESET, Move.D, Move.L


def t1s() -> Machine:
    """Typewriter machine for 1s at (row 1, col 2) and (row 2, col 1)."""
    rules = [
        ("q0", "0", "q1", R),
        ("q0", "1", "q1", R),
        ("q1", "1", "q2", CR),
        ("q2", "1", "acc", R),
    ]
    return Machine.build(Kind.TW, ["q0", "q1", "q2", "acc"], "01", "q0", "acc", rules, notes=["fixture t1s"])


def stairs3w() -> Machine:
    """Three-way machine walking the staircase R, D, R, D, ... then checking the corner.

    After a right move onto ``#`` it steps left and down; reading ``#`` there
    proves the walk ended in the bottom-right cell of a square word.
    """
    rules = [
        ("q0", "1", "q1", R),
        ("q1", "1", "q2", D),
        ("q2", "1", "q1", R),
        ("q1", "#", "q3", L),
        ("q3", "1", "q4", D),
        ("q4", "#", "acc", R),
    ]
    states = ["q0", "q1", "q2", "q3", "q4", "acc"]
    return Machine.build(Kind.W3, states, "01", "q0", "acc", rules, notes=["fixture stairs3w"])


def tL() -> Machine:
    """Nondeterministic typewriter machine for the L-shaped language.

    Row 1 must be an interior row ``1 0...0`` with at least one 0, which
    enforces ``m >= 2`` and ``n >= 2``.  At the start of each later row the
    machine guesses interior or bottom; the bottom row is all 1s and must be
    followed by the bottom border.
    """
    rules = [
        ("s", "1", "a", R),
        ("a", "0", "z", R),
        ("z", "0", "z", R),
        ("z", "#", "r", CR),
        ("r", "1", "z", R),
        ("r", "1", "b", R),
        ("b", "1", "b", R),
        ("b", "#", "f", CR),
        ("f", "#", "acc", R),
    ]
    states = ["s", "a", "z", "r", "b", "f", "acc"]
    return Machine.build(Kind.TW, states, "01", "s", "acc", rules, notes=["fixture tL"])


def universal_bfa() -> Machine:
    """Accepts every word: loop on everything, guess the final border read."""
    rules = [("q", s, "q", None) for s in "01#"] + [("q", "#", "acc", None)]
    return Machine.build(Kind.BFA, ["q", "acc"], "01", "q", "acc", rules, notes=["fixture universal_bfa"])


FIXTURES = {
    "t1s": t1s,
    "stairs3w": stairs3w,
    "tL": tL,
    "universal_bfa": universal_bfa,
}


def build_fixture(name: str) -> Machine:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# --- predicates --------------------------------------------------------------


def _binary(w: Word2D) -> None:
    if not w.symbols() <= {"0", "1"}:
        raise ValueError("predicates are defined over the alphabet {0, 1}")


def p1s(w: Word2D) -> bool:
    _binary(w)
    return w.shape == (2, 2) and w.rows[0][1] == "1" and w.rows[1][0] == "1"


def pstairs(w: Word2D) -> bool:
    """Diagonal cells and the tread to their right are 1; other cells are free."""
    _binary(w)
    if w.m != w.n:
        return False
    n = w.n
    return all(w.rows[i][i] == "1" for i in range(n)) and all(w.rows[i][i + 1] == "1" for i in range(n - 1))


def pL(w: Word2D) -> bool:
    _binary(w)
    if w.m < 2 or w.n < 2:
        return False
    for i, row in enumerate(w.rows):
        want = "1" * w.n if i == w.m - 1 else "1" + "0" * (w.n - 1)
        if row != want:
            return False
    return True


PREDICATES = {"p1s": p1s, "pstairs": pstairs, "pL": pL}


def pred(name: str, w: Word2D) -> bool:
    try:
        return PREDICATES[name](w)
    except KeyError:
        raise KeyError(f"unknown predicate {name!r}; known: {', '.join(PREDICATES)}") from None


# --- random pools ------------------------------------------------------------


@dataclass(frozen=True)
class PoolConstraints:
    kind: Kind = Kind.TW
    max_states: int = 4
    alphabet: str = "01"
    deterministic: bool = False
    short_bottom: bool = False
    # reject machines whose language up to 2x2 is empty or everything
    nontrivial: bool = False
    # probability that a (state, symbol) key gets no transition
    p_undefined: float = 0.3
    retry_cap: int = 10_000


class PoolExhausted(RuntimeError):
    pass


def _random_machine(rng: random.Random, c: PoolConstraints) -> Machine:
    k = rng.randint(2, c.max_states)
    states = [f"q{i}" for i in range(k - 1)] + ["acc"]
    moves = sorted(c.kind.moves, key=lambda mv: mv.value) or [None]
    rules = []
    for q in states[:-1]:
        for s in c.alphabet + "#":
            if rng.random() < c.p_undefined:
                continue
            fan = 1 if c.deterministic else rng.choice([1, 1, 2])
            for _ in range(fan):
                rules.append((q, s, rng.choice(states), rng.choice(moves)))
    return Machine.build(c.kind, states, c.alphabet, "q0", "acc", rules)


def _nontrivial(m: Machine) -> bool:
    from .grid import enumerate_words
    from .simulate import accepts

    seen = {accepts(m, w) for mm in (1, 2) for nn in (1, 2) for w in enumerate_words(m.alphabet, mm, nn)}
    return seen == {True, False}


def random_pool(seed: int, count: int, constraints: PoolConstraints | None = None) -> list[Machine]:
    """``count`` machines drawn by rejection sampling; a pure function of the seed.

    Targets are uniform over all states, nondeterministic fan-out is at most
    two per key.  Raises :class:`PoolExhausted` after ``retry_cap`` rejected
    draws in total.
    """
    from .simulate import bottom_chain_analysis

    c = constraints or PoolConstraints()
    rng = random.Random(seed)
    pool: list[Machine] = []
    rejected = 0
    while len(pool) < count:
        m = _random_machine(rng, c)
        ok = validate(m).ok
        if ok and c.deterministic:
            ok = m.deterministic
        if ok and c.short_bottom and m.kind is Kind.TW:
            ok = bottom_chain_analysis(m).short_bottom
        if ok and c.nontrivial:
            ok = _nontrivial(m)
        if ok:
            pool.append(m)
            continue
        rejected += 1
        if rejected > c.retry_cap:
            raise PoolExhausted(f"gave up after {rejected} rejected draws ({len(pool)}/{count} found)")
    return pool
