import os
import sys
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from cospan_bisim.dsl import parse  # noqa: E402

settings.register_profile(
    "default",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# keep checks in-process so timings are comparable across machines
os.environ.setdefault("COSPAN_BISIM_THREADS", "1")

CRITERIA = {
    1: "representative steps of the message channel",
    2: "shift of the loop-free condition along an added loop",
    3: "up-to-context witnesses for the channel pairs",
    4: "negative regressions fail with a proved counterexample",
    5: "ground bisimilarity agrees with the witness",
    6: "property suites",
    7: "reactions agree with direct double-pushout rewriting",
}

_outcomes: dict = {}
_item_criterion: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _item_criterion[item.nodeid] = m.args[0]


def pytest_runtest_logreport(report):
    n = _item_criterion.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        rec = _outcomes.setdefault(n, {"passed": 0, "failed": 0, "time": 0.0})
        rec["passed" if report.passed else "failed"] += report.passed or report.failed
        rec["time"] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        rec = _outcomes.get(n)
        if rec is None:
            tr.write_line(f"criterion {n}: NOT RUN  {CRITERIA[n]}")
            continue
        status = "PASS" if rec["failed"] == 0 and rec["passed"] else "FAIL"
        tr.write_line(f"criterion {n}: {status}  {CRITERIA[n]} "
                      f"({rec['passed']} passed, {rec['failed']} failed, {rec['time']:.2f}s)")


def load_fixture(name: str):
    return parse((files("cospan_bisim") / "fixtures" / f"{name}.cbs").read_text(encoding="utf-8"))


def fixture_path(name: str) -> str:
    return str(files("cospan_bisim") / "fixtures" / f"{name}.cbs")


@pytest.fixture(scope="session")
def channels():
    return load_fixture("channels")


@pytest.fixture(scope="session")
def message():
    return load_fixture("message")


@pytest.fixture(scope="session")
def remark():
    return load_fixture("remark")


@pytest.fixture(scope="session")
def semisat():
    return load_fixture("semisat")


@pytest.fixture(scope="session")
def comparison():
    return load_fixture("comparison")


@pytest.fixture(scope="session")
def shiftdoc():
    return load_fixture("shift")
