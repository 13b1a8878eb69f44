import pytest

from possverify.core import SPC_UNIVERSE, validate
from possverify.scorecard import VerificationPair

MDT, ENH = 4, 3

SCENARIO_PI = {
    "A": (0.00, 0.00, 0.05, 0.15, 0.90, 0.10),
    "B": (0.10, 0.10, 0.40, 0.55, 0.30, 0.00),
    "C": (0.85, 0.10, 0.05, 0.00, 0.00, 0.00),
}
SCENARIO_OBS = {"A": MDT, "B": ENH, "C": MDT}

EXAMPLE1 = (0.05, 0.0, 0.1, 0.2, 0.75, 0.15)
EXAMPLE2 = (0.30, 0.50, 0.50, 0.0, 0.0, 0.0)
CONVERSION_EXAMPLE = (0.05, 0.2, 0.4, 0.6, 0.1, 0.0)


@pytest.fixture
def universe():
    return SPC_UNIVERSE


@pytest.fixture
def scenarios():
    return {
        name: VerificationPair(validate(pi), SCENARIO_OBS[name], id=name)
        for name, pi in SCENARIO_PI.items()
    }


@pytest.fixture
def scenario_pairs(scenarios):
    return [scenarios[k] for k in "ABC"]


# acceptance criterion -> (passed, detail); filled by test_acceptance
RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
