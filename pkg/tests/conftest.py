import pytest

from pairsolve.core import Instance

# A triangle on 0, 1, 2 with multiplicities 3, 2, 2 and
# three further vertices 3, 4, 5.
TRIANGLE_BUNDLES = Instance.from_pairs(6, [(0, 1)] * 3 + [(0, 2)] * 2 + [(1, 2)] * 2)

_results: list[tuple[str, bool, str]] = []


@pytest.fixture
def triangle():
    return TRIANGLE_BUNDLES


@pytest.fixture
def record():
    """Record one acceptance line: ``record(label, passed, detail)``."""

    def _record(label: str, passed: bool, detail: str = "") -> None:
        _results.append((label, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _results:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
