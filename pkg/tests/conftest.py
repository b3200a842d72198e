"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, (title, []))
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry[1].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, results = _CRITERIA[n]
        ok = bool(results) and all(results)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({sum(results)}/{len(results)} checks) {title}")
