import time

import pytest

from swarmmotion import load_bundled


def pytest_sessionstart(session):
    session.config._suite_t0 = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    # whole-suite runtime budget; the tenth acceptance line lives here
    # because only the session end knows the total wall time
    t0 = getattr(session.config, "_suite_t0", None)
    if t0 is None:
        return
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60.0
    print(f"\ncriterion 10: {'PASS' if ok else 'FAIL'} (suite wall time {elapsed:.1f} s, budget 60 s)")
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


@pytest.fixture(scope="session")
def example1():
    return load_bundled("example1")


@pytest.fixture(scope="session")
def example2():
    return load_bundled("example2")


@pytest.fixture(scope="session")
def example3():
    return load_bundled("example3")


@pytest.fixture(scope="session")
def example4():
    return load_bundled("example4")


@pytest.fixture(scope="session")
def example5():
    return load_bundled("example5")
