import pytest

from sincpi.bignum import PrecisionContext

SEED = 20160228

# (criterion, passed, detail) lines collected by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


@pytest.fixture
def ctx20():
    return PrecisionContext(out_digits=20, guard_digits=10)


@pytest.fixture
def ctx30():
    return PrecisionContext(out_digits=30, guard_digits=10)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
