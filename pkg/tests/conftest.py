import pytest

from coded_gray.rgc import CodeLayout

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small():
    """(kB, nB, s) = (2, 4, 2): 16 milestones, m = 421."""
    return CodeLayout.build(2, 4, 2, seed=0)


@pytest.fixture(scope="session")
def small3():
    return CodeLayout.build(2, 4, 3, seed=0)


@pytest.fixture(scope="session")
def medium():
    """(kB, nB, s) = (4, 8, 4): 65536 milestones."""
    return CodeLayout.build(4, 8, 4, seed=0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line, then assert it."""

    def report(label: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return report
