from __future__ import annotations

from pathlib import Path

import pytest

from detsurf.cohomology import parse_multiset

DATA = Path(__file__).parent / "data"

_CRITERIA: list[str] = []


def load_component_counts() -> dict[int, tuple[tuple[int, ...], int]]:
    rows = {}
    for line in (DATA / "component_counts.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        d, ms, count = (x.strip() for x in line.split("|"))
        rows[int(d)] = (parse_multiset(ms), int(count))
    return rows


@pytest.fixture(scope="session")
def component_counts():
    return load_component_counts()


@pytest.fixture
def criterion(request):
    """Call with (number, ok, detail) to log one acceptance line."""

    def record(num: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
