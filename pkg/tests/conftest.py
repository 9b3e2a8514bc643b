from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA: dict[int, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def note(self, text: str) -> None:
        self.detail = text


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion, printed after the run."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    rec = CriterionRecorder(number, title)
    yield rec
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    CRITERIA[number] = (ok, f"{title}: {rec.detail}" if rec.detail else title)
    print(f"\ncriterion {number} {'PASS' if ok else 'FAIL'} {CRITERIA[number][1]}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, text = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
