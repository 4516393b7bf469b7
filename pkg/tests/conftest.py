import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance criterion -> (passed, detail); filled by the `criterion` fixture
_CRITERIA = {}


class _Recorder:
    def __init__(self, key, title):
        self.key, self.title = key, title
        self.details = []

    def note(self, text):
        self.details.append(text)
        print(f"  {self.key}: {text}")

    def check(self, ok, text):
        self.note(("ok   " if ok else "FAIL ") + text)
        return ok


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance criterion named by the test's marker."""
    marker = request.node.get_closest_marker("criterion")
    key, title = marker.args
    rec = _Recorder(key, title)
    yield rec
    failed = getattr(request.node, "_call_failed", False)
    prev = _CRITERIA.get(key)
    ok = not failed and (prev is None or prev[1])
    _CRITERIA[key] = (title, ok, (prev[2] if prev else []) + rec.details)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed:
        item._call_failed = True


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.lstrip("C"))):
        title, ok, _ = _CRITERIA[key]
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {title}")
