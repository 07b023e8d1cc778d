import pytest

from cyclicsplit.arith import PrimeField
from cyclicsplit.elliptic import WeierstrassCurve

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def E5():
    """y^2 = x^3 + 1 over F_5, group order 6."""
    return WeierstrassCurve.from_params(5, 0, 1)


@pytest.fixture
def E7():
    """y^2 = x^3 + 1 over F_7, group order 12."""
    return WeierstrassCurve.from_params(7, 0, 1)
