import warnings
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
TEST_DATA_DIR = Path(__file__).resolve().parent / "data"

warnings.filterwarnings("ignore", message="Using `httpx` with `starlette.testclient`")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion, reported one line per run"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion_name = marker.args[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            name = getattr(report, "criterion_name", None)
            if name is not None and report.when == "call":
                verdict = "PASS" if status == "passed" else "FAIL"
                lines.append((name, verdict))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in lines:
            terminalreporter.write_line(f"[{verdict}] {name}")


@pytest.fixture(scope="session")
def wheat_dough_path() -> Path:
    return DATA_DIR / "wheat_dough.csv"
