import sys

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_probs(rng, d):
    return rng.dirichlet(np.ones(d))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
