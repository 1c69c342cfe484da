from __future__ import annotations

import pytest

from wengzeta.rootsys import build_root_system
from wengzeta.zeta import z_and_weng

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def a2_bundle(a2):
    return z_and_weng(a2, 1)


# (criterion, status, detail) lines filled in by test_acceptance
ACCEPTANCE_LINES: list[tuple[int, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n, status, detail in sorted(ACCEPTANCE_LINES, key=lambda x: x[0]):
        terminalreporter.write_line(f"[{n}] {status:9s} {detail}")
