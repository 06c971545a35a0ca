import pytest

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    name = report.user_properties and dict(report.user_properties).get("acceptance")
    if not name:
        return
    if report.when == "call" or report.outcome != "passed":
        # a failing setup or teardown also fails the criterion
        prev = ACCEPTANCE.get(name, "PASS")
        ACCEPTANCE[name] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


@pytest.fixture(autouse=True)
def _tag_acceptance(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker:
        request.node.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split()[0][2:])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
