import pytest

from padic_squares import parse_polynomial

# the five polynomials exercised throughout: a line, the histogram/table
# cubic, and three further mixed-degree curves
SUITE_TEXTS = [
    "x+y+1",
    "x^3+y^2+x*y+1",
    "x^3+y^3+x^2*y+y+1",
    "x^3+x*y+x+y+1",
    "y^2*x+x*y+x+y+1",
]

HIST_POLY_TEXT = "x^3+y^2+x*y+1"


@pytest.fixture(scope="session")
def suite_polys():
    return [parse_polynomial(t) for t in SUITE_TEXTS]


@pytest.fixture(scope="session")
def hist_poly():
    return parse_polynomial(HIST_POLY_TEXT)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Replay the per-criterion acceptance lines after the run; stdout of
    # passing tests is captured, and these must be visible every time.
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
