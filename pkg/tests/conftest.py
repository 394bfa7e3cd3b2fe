from hypothesis import settings

# pytest --hypothesis-profile=stress
settings.register_profile("stress", max_examples=3000, deadline=None)

_ACCEPTANCE: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the project")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _, outcomes = _ACCEPTANCE.setdefault(number, (title, []))
    outcomes.append("passed" if call.excinfo is None else "failed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcomes = _ACCEPTANCE[number]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:02d} {title}")

