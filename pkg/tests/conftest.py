import functools

import pytest

_CRITERIA: dict = {}


def criterion(number: int, title: str):
    """Record the outcome of an acceptance test for the end-of-run summary."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            _CRITERIA[number] = (title, "FAIL")
            fn(*args, **kwargs)
            _CRITERIA[number] = (title, "PASS")

        return run

    return wrap


@pytest.fixture(scope="session")
def criteria_log():
    return _CRITERIA


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title}")
