"""Shared fixtures, including the per-criterion acceptance report."""
from __future__ import annotations

from dataclasses import dataclass, field

import pytest

_CRITERIA = []


@dataclass
class Criterion:
    number: int = 0
    title: str = ""
    checks: list = field(default_factory=list)
    crashed: bool = False

    def start(self, number, title):
        self.number, self.title = number, title

    def check(self, label, ok, detail=""):
        self.checks.append((label, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self):
        return bool(self.checks) and not self.crashed and all(ok for _, ok, _ in self.checks)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{label}: {detail}" + ("" if ok else " [fail]") for label, ok, detail in self.checks]
        if self.crashed:
            parts.append("raised an exception")
        return f"{status}  criterion {self.number:>2}  {self.title}  |  " + "; ".join(parts)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_report = rep


@pytest.fixture
def criterion(request):
    crit = Criterion()
    yield crit
    rep = getattr(request.node, "call_report", None)
    # an assertion failure is already reflected in the checks; anything else is a crash
    if rep is not None and rep.failed and all(ok for _, ok, _ in crit.checks):
        crit.crashed = True
    if crit.number:
        _CRITERIA.append(crit)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for crit in sorted(_CRITERIA, key=lambda c: c.number):
        terminalreporter.write_line(crit.line())
    passed = sum(c.passed for c in _CRITERIA)
    terminalreporter.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")
