import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from macaulay.corpus import build_corpus
from macaulay.groebner import initial_presentation
from macaulay.resolution import regularity_report

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def _corpus():
    return tuple(build_corpus())


@functools.lru_cache(maxsize=None)
def _reports():
    return {e.name: regularity_report(e.module) for e in _corpus()}


@functools.lru_cache(maxsize=None)
def _initials():
    return {e.name: initial_presentation(e.module) for e in _corpus()}


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


@pytest.fixture(scope="session")
def reports():
    return _reports()


@pytest.fixture(scope="session")
def initials():
    return _initials()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
