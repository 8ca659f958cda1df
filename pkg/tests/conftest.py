from pathlib import Path

import pytest

from polydep import build_dag, validate_polytree

FIXTURES = Path(__file__).parent / "fixtures"

_lines = pytest.StashKey[list]()


def _polytree(nodes, edges):
    return validate_polytree(build_dag(list(nodes), [tuple(e) for e in edges]))


@pytest.fixture
def P1():
    return _polytree("ABCDE", ["AC", "BC", "CD", "CE"])


@pytest.fixture
def P1p():
    return _polytree("ABCDEF", ["AC", "BC", "CD", "CE", "DF"])


@pytest.fixture
def P2():
    return _polytree("ABC", ["AB", "BC"])


@pytest.fixture
def P3():
    return _polytree("ABC", ["AB", "AC"])


@pytest.fixture
def G3():
    return build_dag(
        ["X", "Y", "Z", "W", "V", "A", "B", "C"],
        [("X", "Y"), ("Y", "Z"), ("Z", "W"), ("X", "V"), ("V", "W"), ("A", "B"), ("C", "B")],
    )


@pytest.fixture
def criterion(pytestconfig):
    """Record a one-line PASS/FAIL verdict shown in the terminal summary."""
    lines = pytestconfig.stash.setdefault(_lines, [])

    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_lines, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
