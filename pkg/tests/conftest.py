import functools

import pytest

from fibsurf.pipeline import PresetRun, run_pipeline

# (number, title, passed) for every acceptance criterion that ran
ACCEPTANCE_RESULTS: list = []


@functools.lru_cache(maxsize=None)
def cached_run(preset: str, **kw):
    """Pipeline runs are deterministic, so share them across tests."""
    return run_pipeline(PresetRun(preset, **kw))


@pytest.fixture
def run():
    return cached_run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
