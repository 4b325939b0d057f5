import pytest

_verdicts: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(key, title): numbered acceptance check reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    key, title = mark.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    _verdicts[key] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(_verdicts, key=int):
        title, ok, detail = _verdicts[key]
        line = f"criterion {key}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
