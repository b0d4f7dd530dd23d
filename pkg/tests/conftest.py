from __future__ import annotations

import sys
from pathlib import Path

import pytest

from cyclebounds import parse_edge_list

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))

# (criterion number, passed, detail) from tests/test_acceptance.py
ACCEPTANCE: list[tuple[int, bool, str]] = []


def load_fixture(name: str):
    return parse_edge_list((FIXTURES / name).read_bytes())


@pytest.fixture(scope="session")
def scc4():
    return load_fixture("scc4.graph")


@pytest.fixture(scope="session")
def scc3():
    return load_fixture("scc3.graph")


@pytest.fixture(scope="session")
def example():
    return load_fixture("example.graph")


@pytest.fixture
def criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE.append((number, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
