import functools

import pytest

from sierpinski_mls.growth import grow
from sierpinski_mls.trees import Level, seed_family


@functools.lru_cache(maxsize=None)
def _grown(t):
    return grow(t)


@functools.lru_cache(maxsize=None)
def _seeds(count):
    return seed_family(count)


@pytest.fixture
def grown():
    """Fresh copy of N(t) and its history, memoised across the session."""
    def make(t):
        g, h = _grown(t)
        return g.copy(), h
    return make


@pytest.fixture
def levels():
    return functools.lru_cache(maxsize=None)(Level.build)


@pytest.fixture(scope="session")
def seeds():
    return _seeds(3)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
