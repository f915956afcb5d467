"""Randomized search for instances with a large one-point extension ratio.

The ratio of an instance (map f, point p) is the smallest stretch achievable
at p divided by Lip(f): a lower bound for the extension constant in the given
dimensions. Copying the nearest anchor's value shows it never exceeds 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .extend import ExtendOptions, solve_one_point
from .lipmap import COINCIDENCE_TOL, AnchoredMap, lip_constant

RATIO_CAP = 2.0 + 1e-6
MIN_POINT_GAP = 0.05
STAGNATION = 50
SIGMA0 = 0.1
SIGMA_FLOOR = 1e-4
FRESH_PROB = 0.02
DRIFT = 1e-3


class RatioCapExceeded(AssertionError):
    pass


@dataclass
class SearchReport:
    params: dict
    best_map: AnchoredMap
    best_point: np.ndarray
    best_ratio: float
    history: list = field(default_factory=list)
    evaluations: int = 0
    rejected: int = 0

    def to_dict(self):
        return {
            "params": self.params,
            "best_ratio": self.best_ratio,
            "best_instance": {
                "points": self.best_map.points.tolist(),
                "values": self.best_map.values.tolist(),
                "point": self.best_point.tolist(),
            },
            "history": [[it, r] for it, r in self.history],
            "evaluations": self.evaluations,
            "rejected": self.rejected,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def instance_ratio(fmap, p, options=None):
    lip = lip_constant(fmap)
    if lip == 0.0:
        return 0.0
    opts = options or ExtendOptions(allow_heuristic=True)
    return solve_one_point(fmap, p, opts).stretch / lip


def _valid(points, values, p):
    k = points.shape[0]
    gaps = np.linalg.norm(points - p, axis=1)
    if gaps.min() < MIN_POINT_GAP:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            if np.linalg.norm(points[i] - points[j]) < COINCIDENCE_TOL:
                return False
    return True


def _sample(rng, m, n, Q, k):
    return (rng.uniform(-1, 1, (k, m)), rng.uniform(-1, 1, (k, Q, n)),
            rng.uniform(-1, 1, m))


def _perturb(rng, points, values, p, sigma):
    return (np.clip(points + sigma * rng.standard_normal(points.shape), -1, 1),
            np.clip(values + sigma * rng.standard_normal(values.shape), -1, 1),
            np.clip(p + sigma * rng.standard_normal(p.shape), -1, 1))


def lower_bound_search(m, n, Q, k, budget, seed, init=None, options=None):
    """Maximize the instance ratio by Gaussian perturbation of a walking chain.

    ``init`` is an optional ``(AnchoredMap, point)`` starting instance. The
    chain moves to any candidate whose ratio is at most 1e-3 below its own,
    which lets it cross the wide plateaus at ratio 1; the best instance seen
    is reported. The step size starts at 0.1, halves after every 50
    iterations without a new best, and resets once it falls below 1e-4. One
    iteration in fifty draws a fresh uniform instance instead. Rejected
    (degenerate) draws count against ``budget``.
    """
    if min(m, n, Q, k) < 1 or budget < 1:
        raise ValueError("m, n, Q, k and budget must be positive")
    rng = np.random.default_rng(seed)
    opts = options or ExtendOptions(allow_heuristic=True, seed=seed % (2**32))
    params = {"m": m, "n": n, "Q": Q, "k": k, "budget": budget, "seed": seed}

    if init is not None:
        fmap, p = init
        if (fmap.m, fmap.n, fmap.Q, fmap.k) != (m, n, Q, k):
            raise ValueError("initial instance does not match (m, n, Q, k)")
        best = (fmap.points.copy(), fmap.values.copy(), np.asarray(p, dtype=float).copy())
    else:
        best = None
        while best is None:
            cand = _sample(rng, m, n, Q, k)
            if _valid(*cand):
                best = cand
    best_map = AnchoredMap(best[0], best[1])
    best_ratio = instance_ratio(best_map, best[2], opts)
    _check_cap(best_ratio)
    report = SearchReport(params, best_map, best[2], best_ratio, [(0, best_ratio)], 1, 0)

    chain, chain_ratio = best, best_ratio
    sigma, stale = SIGMA0, 0
    for it in range(1, budget + 1):
        if rng.random() < FRESH_PROB:
            cand = _sample(rng, m, n, Q, k)
        else:
            cand = _perturb(rng, *chain, sigma)
        if not _valid(*cand):
            report.rejected += 1
            continue
        fmap = AnchoredMap(cand[0], cand[1])
        ratio = instance_ratio(fmap, cand[2], opts)
        report.evaluations += 1
        _check_cap(ratio)
        if ratio >= chain_ratio - DRIFT:
            chain, chain_ratio = cand, ratio
        if ratio > report.best_ratio:
            report.best_map, report.best_point, report.best_ratio = fmap, cand[2], ratio
            report.history.append((it, ratio))
            stale = 0
        else:
            stale += 1
            if stale >= STAGNATION:
                sigma, stale = sigma / 2, 0
                if sigma < SIGMA_FLOOR:
                    sigma = SIGMA0
    return report


def _check_cap(ratio):
    if ratio > RATIO_CAP:
        raise RatioCapExceeded(f"ratio {ratio} exceeds the nearest-point bound 2")
