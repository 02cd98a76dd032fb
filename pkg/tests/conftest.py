import pytest

from latclone import chain, m_lattice, n5

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance():
    """Records one pass/fail line per acceptance criterion; the lines are
    echoed in the terminal summary so they survive output capture."""

    def record(num, label, ok):
        line = f"criterion {num:2d} ({label}): {'pass' if ok else 'FAIL'}"
        _acceptance_lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def chain2():
    return chain(2)


@pytest.fixture(scope="session")
def chain3():
    return chain(3)


@pytest.fixture(scope="session")
def chain4():
    return chain(4)


@pytest.fixture(scope="session")
def diamond():
    return m_lattice(2)


@pytest.fixture(scope="session")
def m3():
    return m_lattice(3)


@pytest.fixture(scope="session")
def pentagon():
    return n5()
