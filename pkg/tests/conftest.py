import numpy as np
import pytest

from qvalued.counterexample import hexagon_instance
from qvalued.lipmap import AnchoredMap
from qvalued.qspace import QConfig


@pytest.fixture
def hexagon():
    return hexagon_instance()


@pytest.fixture
def rng():
    return np.random.default_rng(20140313)


def random_config(rng, Q, n, scale=1.0):
    return QConfig(scale * rng.uniform(-1, 1, (Q, n)))


def random_instance(rng, m, n, Q, k, gap=0.05):
    """Anchors, values and an extension point in [-1, 1], point kept ``gap`` away."""
    while True:
        points = rng.uniform(-1, 1, (k, m))
        p = rng.uniform(-1, 1, m)
        if np.linalg.norm(points - p, axis=1).min() >= gap:
            return AnchoredMap(points, rng.uniform(-1, 1, (k, Q, n))), p


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert it."""
    def check(label, ok, detail):
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"
    return check


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
