import pytest

from golombic.vardi import generate


@pytest.fixture(scope="session")
def vs5():
    return generate(5)


@pytest.fixture(scope="session")
def vs7():
    return generate(7)


@pytest.fixture(scope="session")
def vs8():
    return generate(8)


# acceptance summary: one line per criterion --------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    entry = _CRITERIA.setdefault(props["criterion"], {"title": props["title"], "results": []})
    entry["results"].append(report.outcome)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))
            item.user_properties.append(("title", mark.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        res = _CRITERIA[n]["results"]
        if all(r == "skipped" for r in res):
            verdict = "SKIP"
        elif all(r in ("passed", "skipped") for r in res):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        ok = sum(r == "passed" for r in res)
        terminalreporter.write_line(f"criterion {n:>2}: {verdict}  ({ok}/{len(res)} checks)  {_CRITERIA[n]['title']}")
