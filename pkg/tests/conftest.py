import pytest

from saa.gf import GF


@pytest.fixture(scope="session")
def fields():
    return {"gf2": GF(2), "gf3": GF(3), "gf4": GF(2, 2), "gf5": GF(5), "gf7": GF(7), "gf8": GF(2, 3), "gf9": GF(3, 2)}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
