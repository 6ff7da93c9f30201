import functools

import pytest

from coverings.fixtures import (
    PROFILES,
    build_fn3_fixture,
    build_nil3_fixture,
    build_trivial_fixture,
    random_covering,
)

# profiles cycled through by the randomized suite
SUITE_PROFILES = ("diagonal", "matrix", "radical", "mixed", "two-ideal", "open-cover")
assert set(SUITE_PROFILES) == set(PROFILES)


@functools.lru_cache(maxsize=None)
def random_docs(count=100):
    return tuple(random_covering(seed, SUITE_PROFILES[seed % len(SUITE_PROFILES)]) for seed in range(count))


@functools.lru_cache(maxsize=None)
def two_ideal_docs(count=100):
    return tuple(random_covering(seed, "two-ideal") for seed in range(1000, 1000 + count))


@functools.lru_cache(maxsize=None)
def open_cover_docs(count=40):
    return tuple(random_covering(seed, "open-cover") for seed in range(2000, 2000 + count))


def named_docs():
    return (build_fn3_fixture(), build_nil3_fixture(), build_trivial_fixture(3))


def suite_docs():
    """FN3, NIL3, a trivial covering and 100 random fixtures."""
    return named_docs() + random_docs()


@pytest.fixture
def fn3():
    return build_fn3_fixture().covering()


@pytest.fixture
def nil3():
    return build_nil3_fixture().covering()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
