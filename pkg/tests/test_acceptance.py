"""Exit criteria. Each test records one PASS/FAIL line, printed in the
"acceptance criteria" section at the end of the pytest run."""
import math
import time

import numpy as np
import pytest

from qvalued.counterexample import hexagon_instance
from qvalued.extend import OPTIMAL, certified_lower_bound, nearest_point_extension, solve_one_point
from qvalued.lipmap import AnchoredMap, lip_constant
from qvalued.qspace import QConfig, canonicalize, g_distance, g_distance_bruteforce
from qvalued.search import lower_bound_search

from oracles import weighted_center_value

ORIGIN = np.zeros(2)


def best_time(fn, repeats=20):
    fn()  # warm-up: JIT and caches
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def pairwise(items, dist):
    return [dist(items[i], items[j]) for i, j in ((0, 1), (0, 2), (1, 2))]


def test_ac01_domain_distances(criterion):
    f = hexagon_instance()
    vals, secs = best_time(lambda: pairwise(list(f.points), lambda a, b: float(np.linalg.norm(a - b))))
    err = max(abs(v - math.sqrt(3)) for v in vals)
    criterion("AC1 |A-B|=|A-C|=|B-C|=sqrt3", err <= 1e-12 and secs < 1e-3,
              f"max error {err:.2e}, {secs * 1e3:.3f} ms")


def test_ac02_codomain_distances(criterion):
    f = hexagon_instance()
    values = [f.value(i) for i in range(3)]
    vals, secs = best_time(lambda: pairwise(values, g_distance))
    err = max(abs(v - math.sqrt(2)) for v in vals)
    criterion("AC2 pairwise G = sqrt2", err <= 1e-12 and secs < 1e-3,
              f"max error {err:.2e}, {secs * 1e3:.3f} ms")


def test_ac03_lipschitz_constant(criterion):
    f = hexagon_instance()
    lip, secs = best_time(lambda: lip_constant(f))
    err = abs(lip - math.sqrt(2 / 3))
    criterion("AC3 Lip(f) = sqrt(2/3)", err <= 1e-12 and secs < 1e-3,
              f"Lip = {lip:.15f}, error {err:.2e}, {secs * 1e3:.3f} ms")


def test_ac04_counterexample_certification(criterion):
    f = hexagon_instance()
    t0 = time.perf_counter()
    bound = certified_lower_bound(f, ORIGIN, 0.02)
    res = solve_one_point(f, ORIGIN)
    secs = time.perf_counter() - t0
    ratio = res.stretch / lip_constant(f)
    ok = (bound >= 1 - 1e-3 and res.stretch >= 1 - 1e-6 and res.status == OPTIMAL
          and ratio >= math.sqrt(1.5) - 1e-3 and secs <= 300)
    criterion("AC4 no extension below constant 1", ok,
              f"certified {bound:.6f}, optimum {res.stretch:.12f} ({res.status}), "
              f"ratio {ratio:.6f}, {secs:.1f} s")


def test_ac05_oracle_equivalence(criterion):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    worst = 0.0
    for Q in range(2, 7):
        for n in (1, 2, 3):
            for _ in range(500):
                a, b = QConfig(rng.normal(size=(Q, n))), QConfig(rng.normal(size=(Q, n)))
                worst = max(worst, abs(g_distance(a, b) - g_distance_bruteforce(a, b)))
    secs = time.perf_counter() - t0
    criterion("AC5 Hungarian = brute force", worst <= 1e-9 and secs <= 30,
              f"7500 pairs, max difference {worst:.2e}, {secs:.1f} s")


def test_ac06_metric_axioms(criterion):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    fails = []
    for trial in range(1000):
        Q, n = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        a, b, c = (QConfig(rng.uniform(-5, 5, (Q, n))) for _ in range(3))
        dab, dba = g_distance(a, b), g_distance(b, a)
        if abs(dab - dba) > 1e-12:
            fails.append(("symmetry", trial))
        order = rng.permutation(Q)
        if abs(g_distance(QConfig(a.atoms[order]), b) - dab) > 1e-9:
            fails.append(("permutation", trial))
        if g_distance(a, QConfig(a.atoms[order])) != 0.0 or dab <= 1e-12:
            fails.append(("indiscernibles", trial))
        if not np.array_equal(canonicalize(QConfig(a.atoms[order])).atoms, canonicalize(a).atoms):
            fails.append(("canonical", trial))
        if g_distance(a, c) - dab - g_distance(b, c) > 1e-9:
            fails.append(("triangle", trial))
        v = rng.normal(size=n)
        if abs(g_distance(QConfig(a.atoms + v), QConfig(b.atoms + v)) - dab) > 1e-9:
            fails.append(("translation", trial))
        lam = rng.uniform(0, 4)
        if abs(g_distance(QConfig(lam * a.atoms), QConfig(lam * b.atoms)) - lam * dab) > 1e-9:
            fails.append(("scaling", trial))
    secs = time.perf_counter() - t0
    criterion("AC6 metric axioms", not fails and secs <= 30,
              f"1000 triples, {len(fails)} violations {fails[:3]}, {secs:.1f} s")


def _random_instances(seed, count):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        m, n, Q = (int(v) for v in rng.integers(1, 4, 3))
        k = int(rng.integers(2, 6))
        points, p = rng.uniform(-1, 1, (k, m)), rng.uniform(-1, 1, m)
        if np.linalg.norm(points - p, axis=1).min() < 0.05:
            continue
        out.append((AnchoredMap(points, rng.uniform(-1, 1, (k, Q, n))), p))
    return out


@pytest.fixture(scope="module")
def random_instances():
    return _random_instances(7, 200)


def test_ac07_nearest_point_bound(criterion, random_instances):
    t0 = time.perf_counter()
    worst = -math.inf
    for f, p in random_instances:
        worst = max(worst, nearest_point_extension(f, p).stretch - 2 * lip_constant(f))
    secs = time.perf_counter() - t0
    criterion("AC7 nearest-point stretch <= 2 Lip", worst <= 1e-9 and secs <= 120,
              f"200 instances, max(stretch - 2 Lip) = {worst:.4f}, {secs:.1f} s")


def test_ac08_optimizer_dominance(criterion, random_instances):
    worst = -math.inf
    statuses = set()
    for f, p in random_instances:
        res = solve_one_point(f, p)
        statuses.add(res.status)
        worst = max(worst, res.stretch - nearest_point_extension(f, p).stretch)
    criterion("AC8 optimum <= nearest-point", worst <= 1e-9,
              f"200 instances, max(optimal - nearest) = {worst:.2e}, statuses {sorted(statuses)}")


def test_ac09_classical_consistency(criterion):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        m, n, k = int(rng.integers(1, 4)), int(rng.integers(1, 3)), int(rng.integers(2, 6))
        while True:
            points, p = rng.uniform(-1, 1, (k, m)), rng.uniform(-1, 1, m)
            if np.linalg.norm(points - p, axis=1).min() >= 0.05:
                break
        values = rng.uniform(-1, 1, (k, 1, n))
        d = np.linalg.norm(points - p, axis=1)
        got = solve_one_point(AnchoredMap(points, values), p).stretch
        worst = max(worst, abs(got - weighted_center_value(values[:, 0, :], d)))
    report = lower_bound_search(1, 1, 1, 2, budget=500, seed=9)
    ok = worst <= 1e-8 and report.best_ratio <= 1 + 1e-6
    criterion("AC9 classical Q=1 consistency", ok,
              f"100 instances max |solver - oracle| = {worst:.2e}; "
              f"line search best ratio {report.best_ratio:.9f}")


def test_ac10_search_regression(criterion):
    init = (hexagon_instance(), ORIGIN)
    a = lower_bound_search(2, 2, 2, 3, budget=300, seed=10, init=init)
    b = lower_bound_search(2, 2, 2, 3, budget=300, seed=10, init=init)
    ratios = [r for _, r in a.history]
    ok = (a.best_ratio >= math.sqrt(1.5) - 1e-6 and ratios == sorted(ratios)
          and a.to_json() == b.to_json())
    criterion("AC10 seeded search regression", ok,
              f"best ratio {a.best_ratio:.9f}, {len(ratios)} improvements, "
              f"reports identical: {a.to_json() == b.to_json()}")
