from pathlib import Path

import pytest

from poctl.modelfile import load_model

ROOT = Path(__file__).resolve().parent.parent
TREATMENT = ROOT / "models" / "treatment.pks"

_criteria: dict[str, list] = {}


@pytest.fixture(scope="session")
def treatment():
    """The three-state treatment model: poor, fair, excellent."""
    return load_model(TREATMENT)


@pytest.fixture(scope="session")
def treatment_path():
    return str(TREATMENT)


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        number, title = marker.args
        request.node.user_properties.append(("criterion", f"{number} {title}"))


def pytest_runtest_logreport(report):
    # one line per acceptance criterion in the terminal summary
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _criteria.setdefault(value, []).append(report.outcome)


def _order(name):
    number = name.split()[0]
    digits = "".join(ch for ch in number if ch.isdigit())
    return (int(digits), number)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=_order):
        outcomes = _criteria[name]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
