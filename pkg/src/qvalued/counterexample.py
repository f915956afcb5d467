"""The hexagon instance: a sqrt(2/3)-Lipschitz map on three points of the
plane, valued in A_2(R^2), none of whose extensions to the origin is
1-Lipschitz.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .extend import certify_grid, solve_one_point
from .lipmap import AnchoredMap, lip_constant
from .qspace import QConfig, g_distance

EXACT_TOL = 1e-12
SQRT3 = math.sqrt(3.0)
ORIGIN = np.zeros(2)


def hexagon_vertices():
    """Vertices P1..P6 of the unit regular hexagon, as rows 0..5."""
    h = SQRT3 / 2
    return np.array([
        [0.0, 1.0],
        [h, 0.5],
        [h, -0.5],
        [0.0, -1.0],
        [-h, -0.5],
        [-h, 0.5],
    ])


def hexagon_domain():
    """Anchor points A, B, C as rows."""
    h = SQRT3 / 2
    return np.array([[0.0, 1.0], [-h, -0.5], [h, -0.5]])


def hexagon_instance():
    P = hexagon_vertices()
    values = [P[[0, 3]], P[[1, 4]], P[[2, 5]]]
    return AnchoredMap(hexagon_domain(), values)


@dataclass
class Claim:
    name: str
    value: float
    threshold: float
    relation: str
    passed: bool


@dataclass
class HexagonReport:
    domain_distances: tuple
    value_distances: tuple
    lip_f: float
    min_stretch_lb: float
    min_stretch_found: float
    constant_ratio: float
    grid_step: float
    tol: float
    claims: list = field(default_factory=list)

    @property
    def verdict(self):
        return "pass" if all(c.passed for c in self.claims) else "fail"

    @property
    def failed(self):
        return [c.name for c in self.claims if not c.passed]


def _pairwise(items, dist):
    return tuple(dist(items[i], items[j]) for i, j in ((0, 1), (0, 2), (1, 2)))


def verify_counterexample(tol=1e-3, grid_step=0.02, instance=None):
    """Check every numerical claim about the hexagon instance.

    ``instance`` replaces the hexagon map (same anchors expected), which lets
    callers confirm that a broken instance is reported as failing.
    """
    if tol > 1e-3:
        raise ValueError("tol must be at most 1e-3")
    fmap = hexagon_instance() if instance is None else instance
    points = [fmap.points[i] for i in range(fmap.k)]
    values = [fmap.value(i) for i in range(fmap.k)]
    dom = _pairwise(points, lambda a, b: float(np.linalg.norm(a - b)))
    cod = _pairwise(values, g_distance)
    lip = lip_constant(fmap)
    found = solve_one_point(fmap, ORIGIN).stretch
    bound = certify_grid(fmap, ORIGIN, grid_step, upper=found).bound
    ratio = found / lip if lip > 0 else math.inf

    claims = []
    for label, vals, target in (("domain distance", dom, SQRT3),
                                ("G distance", cod, math.sqrt(2.0))):
        for (i, j), v in zip(("AB", "AC", "BC"), vals):
            claims.append(Claim(f"{label} {i}{j}", v, target, "==",
                                abs(v - target) <= EXACT_TOL))
    target = math.sqrt(2.0 / 3.0)
    claims.append(Claim("lip_f", lip, target, "==", abs(lip - target) <= EXACT_TOL))
    claims.append(Claim("certified lower bound", bound, 1.0 - tol, ">=", bound >= 1.0 - tol))
    claims.append(Claim("optimal stretch", found, 1.0 - tol, ">=", found >= 1.0 - tol))
    target = math.sqrt(1.5) - tol
    claims.append(Claim("constant ratio", ratio, target, ">=", ratio >= target))
    return HexagonReport(dom, cod, lip, bound, found, ratio, grid_step, tol, claims)


def half_plane_check(samples, seed=0):
    """Sampled check that values with both atoms in {y <= 0} sit at G-distance >= 1 from f(A)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    fA = hexagon_instance().value(0)
    atoms = np.empty((samples, 2, 2))
    atoms[..., 0] = rng.uniform(-3.0, 3.0, size=(samples, 2))
    atoms[..., 1] = rng.uniform(-3.0, 0.0, size=(samples, 2))
    return all(g_distance(QConfig(a), fA) >= 1.0 - EXACT_TOL for a in atoms)


def _sector_sample(rng, lo_deg, hi_deg, size, r_max=3.0):
    theta = np.deg2rad(rng.uniform(lo_deg, hi_deg, size))
    r = rng.uniform(0.0, r_max, size)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def sector_inequality_samples(samples, seed=0):
    """Values of |S1 - P6|^2 + |S2 - P3|^2 for S1 in the sector of P1 within the
    first quadrant (polar angle 60..90 degrees) and S2 in the opposite sector
    (240..300 degrees). The sectors are closed.
    """
    rng = np.random.default_rng(seed)
    P = hexagon_vertices()
    s1 = _sector_sample(rng, 60.0, 90.0, samples)
    s2 = _sector_sample(rng, 240.0, 300.0, samples)
    return np.sum((s1 - P[5]) ** 2, axis=1) + np.sum((s2 - P[2]) ** 2, axis=1)


def rotate_instance(fmap, degrees):
    """Rotate domain and codomain of a planar map about the origin."""
    a = math.radians(degrees)
    R = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    return AnchoredMap(fmap.points @ R.T, fmap.values @ R.T)
