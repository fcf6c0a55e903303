import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_LINES: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, passed, detail)``."""

    def record(label: str, passed: bool, detail: str = ""):
        _LINES[label] = (bool(passed), detail)

    return record


def _key(label):
    head = label.split()[0]
    num = "".join(ch for ch in head if ch.isdigit())
    return (int(num or 0), head)


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label in sorted(_LINES, key=_key):
        ok, detail = _LINES[label]
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
