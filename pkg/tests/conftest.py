import pytest

from affplucker.geometry import make_space


@pytest.fixture(scope="session")
def ag32():
    return make_space(3, 2)


@pytest.fixture(scope="session")
def ag33():
    return make_space(3, 3)


@pytest.fixture(scope="session")
def ag23():
    return make_space(2, 3)


@pytest.fixture(scope="session")
def ag22():
    return make_space(2, 2)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_record():
    def record(criterion: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
