import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from scichern.enumeration import enumerate_points  # noqa: E402
from scichern.hull import hull_of  # noqa: E402
from scichern.report import RunConfig, build_report  # noqa: E402

ACCEPTANCE_TITLES = {
    1: "corner reproduction",
    2: "hull agreement",
    3: "line constants and discrepancies",
    4: "step 1 certificates",
    5: "step 2 certificates",
    6: "step 3 certificates",
    7: "cone certificates",
    8: "corollary sweep",
    9: "reduction oracle",
    10: "property suites",
}

_acceptance: dict[int, list[str]] = {}


@pytest.fixture(scope="session")
def cloud40():
    return enumerate_points(40)


@pytest.fixture(scope="session")
def hull40(cloud40):
    return hull_of(cloud40)


@pytest.fixture(scope="session")
def default_report():
    return build_report(RunConfig())


def _criterion_of(item_name: str):
    # test_criterion_07_cone_identities -> 7
    parts = item_name.split("_")
    if len(parts) > 2 and parts[0] == "test" and parts[1] == "criterion":
        return int(parts[2])
    return None


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    n = _criterion_of(name)
    if n is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance.setdefault(n, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_TITLES):
        outcomes = _acceptance.get(n)
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} ({ACCEPTANCE_TITLES[n]}): {status}")
