import pytest

from darbouxkit import QQ, DifferentialForm, parse_polynomial


@pytest.fixture
def P():
    return parse_polynomial


def form(p: str, q: str, field=QQ, degree=None) -> DifferentialForm:
    return DifferentialForm.parse(p, q, degree, field)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
