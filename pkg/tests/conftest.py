import warnings

import pytest

from cosetym.connection import IntertwinerForcedZeroWarning


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, text = marker.args
    measured = dict(item.user_properties).get("measured", "")
    item.config._acceptance = getattr(item.config, "_acceptance", {})
    item.config._acceptance[number] = (text, report.outcome, measured)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        text, outcome, measured = results[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {number:2d} {status}: {text}"
        if measured:
            line += f" [{measured}]"
        terminalreporter.write_line(line)


@pytest.fixture
def quiet_zero_intertwiner():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntertwinerForcedZeroWarning)
        yield
