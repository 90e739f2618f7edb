import json

import pytest
from hypothesis import HealthCheck, settings

from congruent.cli import main

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or report.failed:
        number, title = mark.args
        prev = _criteria.get(number, (title, True))
        _criteria[number] = (title, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return run


@pytest.fixture
def run_json(run_cli):
    """Run with --json; returns (exit_code, list of parsed documents)."""

    def run(*argv):
        code, out, _ = run_cli(*argv, "--json")
        return code, [json.loads(line) for line in out.splitlines() if line.strip()]

    return run
