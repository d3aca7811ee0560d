from __future__ import annotations

import pytest

from actualcause.corpus import load_corpus
from actualcause.formulas import atom

# filled by test_acceptance, printed after the run so every criterion
# gets its own visible pass/fail line
ACCEPTANCE = []


def record_criterion(number, label, passed, detail=""):
    ACCEPTANCE.append((number, label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, passed, detail in sorted(ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:02d} {status}: {label}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return {entry.name: entry for entry in load_corpus()}


@pytest.fixture(scope="session")
def m1(corpus):
    return corpus["m1"].model


@pytest.fixture(scope="session")
def m2(corpus):
    return corpus["m2"].model


@pytest.fixture(scope="session")
def suzy(corpus):
    return corpus["suzy"].model


@pytest.fixture(scope="session")
def antidote(corpus):
    return corpus["antidote"].model


@pytest.fixture(scope="session")
def b0():
    return atom("B", 0)


@pytest.fixture(scope="session")
def g1():
    return atom("G", 1)
