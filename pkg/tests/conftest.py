import random

import pytest

from brauerflip import fixtures
from brauerflip.rgb_algebra import compatible_ns

SMALL_NS = (2, 3, 4, 6)

_criteria: dict[int, tuple[bool, str]] = {}


def fixture_ns(name: str) -> list[int]:
    """Compatible ``n`` among the small values, or the fixture's own ``n``."""
    g = fixtures.load(name)
    ns = [n for n in compatible_ns(g) if n in SMALL_NS]
    return ns or [fixtures.default_n(name)]


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        _criteria[number] = (ok, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        ok, detail = _criteria[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
