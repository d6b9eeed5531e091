import numpy as np
import pytest

from pauliscope import PauliRep


def counterexample_pair():
    """Two class-F states with equal degree-4 local invariants but different families."""
    c = np.diag([0.5, 0.25, 0.0])
    p1 = PauliRep([0.25, 0.0, 0.5], np.zeros(3), c)
    p2 = PauliRep([0.0, 0.5, 0.25], np.zeros(3), c)
    return p1, p2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    verdicts = item.config.stash.setdefault(_ACCEPTANCE, {})
    verdicts[number] = f"criterion {number:2d}  {'PASS' if rep.passed else 'FAIL'}  {title}"


def pytest_terminal_summary(terminalreporter, config):
    verdicts = config.stash.get(_ACCEPTANCE, {})
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
