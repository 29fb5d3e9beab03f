import pytest
from hypothesis import settings

from lsdom.latin import LatinSquare, find_intercalate, from_grid

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# Order-5 square with an intercalate; no group of order 5 has one, so this
# square is not a group isotope and its graph is not covered by the
# vertex-0 symmetry argument.
NON_GROUP_5 = from_grid(
    [
        [1, 2, 3, 4, 5],
        [2, 1, 4, 5, 3],
        [3, 4, 5, 1, 2],
        [4, 5, 2, 3, 1],
        [5, 3, 1, 2, 4],
    ]
)


def switch_intercalate(square: LatinSquare) -> LatinSquare:
    """Swap the two symbols of the first intercalate (a different latin square)."""
    hit = find_intercalate(square)
    assert hit is not None
    r1, r2, c1, c2 = hit
    rows = square.rows()
    rows[r1 - 1][c1 - 1], rows[r1 - 1][c2 - 1] = rows[r1 - 1][c2 - 1], rows[r1 - 1][c1 - 1]
    rows[r2 - 1][c1 - 1], rows[r2 - 1][c2 - 1] = rows[r2 - 1][c2 - 1], rows[r2 - 1][c1 - 1]
    return from_grid(rows)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
