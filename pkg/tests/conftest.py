import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance summary.

    The test calls ``criterion(number, detail)`` once its assertions are done;
    a test that fails before that is reported as FAIL.
    """
    state = {}

    def record(number, detail=""):
        state["number"] = number
        state["detail"] = detail

    yield record
    num = state.get("number", request.node.get_closest_marker("criterion").args[0])
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    ACCEPTANCE[num] = ("FAIL" if failed else "PASS", state.get("detail", ""))


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {verdict}  {detail}")
