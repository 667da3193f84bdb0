from __future__ import annotations

import re
from pathlib import Path

import pytest

from tld.io import load_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_ACCEPTANCE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_outcomes: dict[str, list[str]] = {}


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


@pytest.fixture
def graph():
    """Load a fixture document (election or graph) as a validated graph."""
    return lambda name: load_graph(FIXTURES / f"{name}.json")


def pytest_runtest_logreport(report):
    m = _ACCEPTANCE.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(m.group(1), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes, key=int):
        ok = all(o == "passed" for o in _outcomes[crit])
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
