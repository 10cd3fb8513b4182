import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    """record(k, ok, detail): one PASS/FAIL line per acceptance criterion."""

    def record(k: int, ok: bool, detail: str) -> None:
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[k] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
