import random

import pytest

from morseconn import figures

# lines collected by test_acceptance, echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def fig2():
    return figures.load("fig2")


@pytest.fixture(scope="session")
def fig5():
    return figures.load("fig5")


@pytest.fixture(scope="session")
def fig6():
    return figures.load("fig6")


@pytest.fixture(scope="session")
def fig7():
    return figures.load("fig7")


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
