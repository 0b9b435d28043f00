import sys

import pytest
from hypothesis import settings, strategies as st

from finsemiring.corpus import constructed_corpus, enumerate_semirings, named

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

NAMES = ["S1", "Z2", "B2", "Q2", "LZ2", "RB4", "TR3", "N2", "M4"]


@pytest.fixture(scope="session")
def S():
    """Named reference semirings by attribute: S.Z2, S.TR3, ..."""
    class _Named:
        def __getattr__(self, name):
            return named(name)
    return _Named()


@pytest.fixture(scope="session")
def census():
    return [T for n in (1, 2, 3) for T in enumerate_semirings(n)]


@pytest.fixture(scope="session")
def census_iso():
    return [T for n in (1, 2, 3) for T in enumerate_semirings(n, up_to_iso=True)]


@pytest.fixture(scope="session")
def corpus16():
    return [it.semiring for it in constructed_corpus(16)]


def small_semirings():
    """Hypothesis strategy over the up-to-iso census of orders 1..3."""
    pool = [T for n in (1, 2, 3) for T in enumerate_semirings(n, up_to_iso=True)]
    return st.sampled_from(pool)


def relabelled(strategy):
    """A semiring together with a random relabelling of its carrier."""
    return strategy.flatmap(
        lambda T: st.permutations(list(range(T.order))).map(lambda p: (T, T.relabel(p), tuple(p)))
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("[")[1].split("]")[0])):
        terminalreporter.write_line(line)
