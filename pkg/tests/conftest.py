import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion with a summary line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = getattr(item, "criterion_detail", "")
    _RESULTS.append((number, title, "PASS" if rep.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, detail in sorted(_RESULTS):
        line = f"criterion {number:2d} {status}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def report_detail(request):
    """Attach a one-line measurement summary to the acceptance line."""
    def record(text: str) -> None:
        request.node.criterion_detail = text
        print(text)
    return record


from hypothesis import settings  # noqa: E402

settings.register_profile("repo", deadline=None, derandomize=True)
settings.load_profile("repo")
