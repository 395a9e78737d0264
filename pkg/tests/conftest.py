import pytest

from gridfa.fixtures import PoolConstraints, random_pool
from gridfa.machines import Kind

# (criterion, passed, detail) lines collected by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for crit, ok, detail in ACCEPTANCE_LINES:
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {crit}: {detail}")


@pytest.fixture(scope="session")
def nd_pool():
    return random_pool(11, 6, PoolConstraints(short_bottom=True, nontrivial=True))


@pytest.fixture(scope="session")
def det_pool():
    return random_pool(12, 6, PoolConstraints(short_bottom=True, nontrivial=True, deterministic=True))


@pytest.fixture(scope="session")
def general_pool():
    return random_pool(13, 8, PoolConstraints(max_states=5, p_undefined=0.2))


@pytest.fixture(scope="session")
def w2_pool():
    return random_pool(14, 6, PoolConstraints(kind=Kind.W2, max_states=4))


@pytest.fixture(scope="session")
def long_chain():
    """Accepts words of width >= 3 by walking four #s along the bottom border."""
    from gridfa.machines import Machine, Move

    R, CR = Move.R, Move.RESET
    rules = [("q0", "0", "q0", R), ("q0", "#", "c1", CR), ("c1", "0", "q0", R),
             ("c1", "#", "c2", R), ("c2", "#", "c3", R), ("c3", "#", "c4", R), ("c4", "#", "acc", R)]
    return Machine.build("tw", ["q0", "c1", "c2", "c3", "c4", "acc"], "01", "q0", "acc", rules)
