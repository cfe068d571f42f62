import pytest

from approval_seats import Group, filter_by_approval, fit_ols, reference_dataset


@pytest.fixture(scope="session")
def ref():
    return reference_dataset()


@pytest.fixture(scope="session")
def fits(ref):
    return {g: fit_ols(filter_by_approval(ref, g).pairs()) for g in Group}


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
