import contextlib
import os

import hypothesis
import numpy as np
import pytest

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=400, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.acceptance_results = {}


@pytest.fixture
def criterion(request):
    """Context manager recording a PASS/FAIL line for one acceptance criterion."""
    results = request.config.acceptance_results

    @contextlib.contextmanager
    def run(number, label):
        try:
            yield
        except BaseException:
            results[number] = ("FAIL", label)
            print(f"criterion {number}: FAIL  {label}")
            raise
        results[number] = ("PASS", label)
        print(f"criterion {number}: PASS  {label}")

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, label = results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {label}")
