import math

import numpy as np
import pytest

from tropical_location.location import LocationInstance

NEG = -math.inf


def reachable_all(A):
    """Transitive closure by repeated squaring of the boolean support; independent of scipy."""
    n = A.shape[0]
    R = np.isfinite(A)
    for _ in range(max(1, math.ceil(math.log2(n)) + 1)):
        R = R | ((R.astype(int) @ R.astype(int)) > 0)
    return bool(R.all())


def random_irreducible(rng, n, low=-10.0, high=10.0):
    """Random n x n matrix with injected tropical zeros whose support stays strongly connected."""
    zero_rate = rng.uniform(0.0, 0.7)
    while True:
        A = rng.uniform(low, high, size=(n, n))
        A[rng.random((n, n)) < zero_rate] = NEG
        if reachable_all(A):
            return A


def irreducible_corpus(count=200, seed=20240601, max_n=6):
    rng = np.random.default_rng(seed)
    return [random_irreducible(rng, int(rng.integers(1, max_n + 1))) for _ in range(count)]


def random_instance(rng, max_n=4, max_m=10, spread=10.0, n=None):
    n = int(rng.integers(1, max_n + 1)) if n is None else n
    m = int(rng.integers(2, max_m + 1))
    points = rng.uniform(-spread, spread, size=(m, n))
    weights = rng.uniform(-spread, spread, size=m)
    return LocationInstance(points, weights)


@pytest.fixture(scope="session")
def corpus():
    return irreducible_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(7)


# One summary line per acceptance criterion.
_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items(), key=lambda kv: int(kv[0].split("_")[2])):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
