import pytest

from pqscp.core import validate_params

PAIRS = [(2, 3), (2, 5), (3, 5), (3, 7), (5, 7)]

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    _acceptance_lines.append(line)


@pytest.fixture
def p23():
    return validate_params(2, 3)


@pytest.fixture(params=PAIRS, ids=lambda pq: f"p{pq[0]}q{pq[1]}")
def params(request):
    return validate_params(*request.param)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
