import glob
import os

import pytest

from gridfa.fixtures import (
    FIXTURES, PoolConstraints, PoolExhausted, build_fixture, pred, random_pool,
)
from gridfa.grid import Word2D, enumerate_words
from gridfa.machines import Kind, load_machine, validate
from gridfa.simulate import accepts, bottom_chain_analysis, run

W = Word2D.from_str
CORPUS = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_valid(name):
    assert validate(build_fixture(name)).ok


def test_corpus_matches_builders():
    files = sorted(glob.glob(os.path.join(CORPUS, "*.m")))
    assert {os.path.basename(f)[:-2] for f in files} == set(FIXTURES)
    for f in files:
        assert load_machine(f) == build_fixture(os.path.basename(f)[:-2])


@pytest.mark.parametrize("name, word, expected", [
    ("t1s", "01/11", True), ("t1s", "00/11", False),
    ("stairs3w", "1100/0110/0011/0001", True), ("stairs3w", "1100/0100/0011/0001", False),
    ("tL", "10/11", True), ("tL", "11/11", False),
])
def test_fixture_runs(name, word, expected):
    assert run(build_fixture(name), W(word)).accepted is expected


def test_t1s_shape():
    t = build_fixture("t1s")
    assert t.deterministic and t.state_count == 4


def test_predicates():
    assert pred("p1s", W("11/10")) and not pred("p1s", W("10/11"))
    assert pred("pL", W("100/100/111"))
    assert pred("pstairs", W("11/01"))
    with pytest.raises(KeyError):
        pred("nope", W("1"))


def test_stairs_matches_predicate_on_squares():
    t = build_fixture("stairs3w")
    for n in range(1, 4):
        for w in enumerate_words("01", n, n):
            assert run(t, w).accepted == pred("pstairs", w)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        build_fixture("nope")


def test_pool_is_deterministic_in_seed():
    c = PoolConstraints(nontrivial=True)
    assert random_pool(5, 4, c) == random_pool(5, 4, c)
    assert random_pool(5, 4, c) != random_pool(6, 4, c)


def test_pool_constraints_hold():
    c = PoolConstraints(deterministic=True, short_bottom=True, nontrivial=True)
    for m in random_pool(1, 5, c):
        assert validate(m).ok and m.deterministic
        assert len(m.states) <= 4
        assert bottom_chain_analysis(m).short_bottom
        seen = {accepts(m, w) for a in (1, 2) for b in (1, 2) for w in enumerate_words("01", a, b)}
        assert seen == {True, False}


@pytest.mark.parametrize("kind", [Kind.W3, Kind.W4, Kind.BFA, Kind.RFA])
def test_pool_other_kinds(kind):
    for m in random_pool(3, 4, PoolConstraints(kind=kind)):
        assert m.kind is kind and validate(m).ok


def test_pool_exhaustion():
    impossible = PoolConstraints(max_states=2, p_undefined=1.0, nontrivial=True, retry_cap=50)
    with pytest.raises(PoolExhausted):
        random_pool(0, 1, impossible)
