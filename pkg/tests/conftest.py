import pytest

# criterion number -> (label, "PASS" | "FAIL", detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        label, status, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"{status} criterion {num}: {label} ({detail})")
