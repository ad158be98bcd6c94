import pytest

from sealtc.levels import make_poset

P0 = make_poset(["L", "H"], [("L", "H")])
PFLAT = make_poset(["L", "H"])

# filled in by the acceptance suite, printed at the end of the run
CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def P():
    return P0


@pytest.fixture
def Pflat():
    return PFLAT


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, note = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {note}")
