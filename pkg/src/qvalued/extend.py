"""One-point Lipschitz extensions of anchored maps.

The optimal value at a new point ``p`` minimizes the stretch
``max_i G(T, f(x_i)) / |p - x_i|`` over all configurations ``T``. Fixing which
atom of ``T`` is paired with which atom of each anchor value turns the problem
into a weighted smallest-enclosing-ball problem in R^(Q n); the global optimum
is the best of these over all pairings, with the first anchor's pairing fixed
to the identity by relabeling ``T``.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapacityError, CoincidenceError
from .lipmap import COINCIDENCE_TOL, anchor_distances, pair_lower_bound, stretch_terms
from .qspace import QConfig, canonicalize, optimal_matching

OPTIMAL = "optimal-within-tolerance"
HEURISTIC = "heuristic"
ACTIVE_TOL = 1e-9


@dataclass(frozen=True)
class ExtendOptions:
    tol: float = 1e-10
    profile_cap: int = 10080
    allow_heuristic: bool = False
    restarts: int = 16
    seed: int = 0


@dataclass(frozen=True)
class ExtensionResult:
    value: QConfig
    stretch: float
    profile: tuple
    active_anchors: tuple
    status: str
    lower_bound: float


@dataclass(frozen=True)
class GridCertificate:
    bound: float
    grid_stretch: float
    modulus: float
    radius: float
    grid_points: int
    evaluations: int
    witness: QConfig


@functools.lru_cache(maxsize=None)
def permutation_table(Q):
    """All permutations of range(Q) in lexicographic order, as an int64 array."""
    return np.array(list(itertools.permutations(range(Q))), dtype=np.int64).reshape(-1, Q)


def profile_count(Q, k):
    return math.factorial(Q) ** max(k - 1, 0)


def _check_point(fmap, p):
    if fmap.k == 0:
        raise ValueError("map has no anchors")
    d = anchor_distances(fmap, p)
    if d.min() < COINCIDENCE_TOL:
        raise CoincidenceError(f"point coincides with anchor {int(np.argmin(d))}")
    return d


def _result(fmap, p, value, status, lower):
    terms = stretch_terms(fmap, p, value)
    stretch = float(terms.max())
    profile = tuple(optimal_matching(value, fmap.value(i)) for i in range(fmap.k))
    active = tuple(int(i) for i in np.flatnonzero(terms >= stretch - ACTIVE_TOL))
    return ExtensionResult(canonicalize(value), stretch, profile, active, status,
                           float(min(lower, stretch)))


def solve_one_point(fmap, p, options=None):
    """Value at ``p`` with the smallest stretch against every anchor.

    Full enumeration of matching profiles gives ``status == OPTIMAL``; if the
    profile count exceeds ``options.profile_cap`` a multi-start profile descent
    runs instead (only when ``options.allow_heuristic``).
    """
    opts = options or ExtendOptions()
    d = _check_point(fmap, p)
    Q, n = fmap.Q, fmap.n
    values = np.ascontiguousarray(fmap.values)
    perms = permutation_table(Q)
    if profile_count(Q, fmap.k) <= opts.profile_cap:
        t, y, _ = _kernels.profile_sweep(values, d, perms)
        value = QConfig(np.asarray(y).reshape(Q, n))
        lower = max(pair_lower_bound(fmap, p), t - opts.tol)
        return _result(fmap, p, value, OPTIMAL, lower)
    if not opts.allow_heuristic:
        raise CapacityError(
            f"{profile_count(Q, fmap.k)} matching profiles exceed the cap of {opts.profile_cap}")
    value = _profile_descent(fmap, d, perms, opts)
    return _result(fmap, p, value, HEURISTIC, pair_lower_bound(fmap, p))


def _rematch(values, y, perms, lookup):
    Q, n = values.shape[1:]
    T = y.reshape(Q, n)
    codes = np.empty(values.shape[0], dtype=np.int64)
    for i, v in enumerate(values):
        diff = T[:, None, :] - v[None, :, :]
        perm, _ = _kernels.assignment(np.einsum("ijk,ijk->ij", diff, diff))
        codes[i] = lookup[tuple(int(j) for j in perm)]
    return codes


def _profile_descent(fmap, d, perms, opts):
    values = np.ascontiguousarray(fmap.values)
    lookup = {tuple(int(j) for j in row): c for c, row in enumerate(perms)}
    rng = np.random.default_rng(opts.seed)
    nearest = int(np.argmin(d))
    starts = [_rematch(values, values[nearest].ravel(), perms, lookup)]
    starts += [rng.integers(len(perms), size=fmap.k) for _ in range(opts.restarts)]
    neighborhood = len(perms) * fmap.k <= 256
    best_t, best_y = math.inf, values[nearest].ravel()
    for codes in starts:
        y, t = _kernels.profile_solve(values, d, perms, codes)
        for _ in range(100):
            improved = False
            new = _rematch(values, y, perms, lookup)
            if not np.array_equal(new, codes):
                y2, t2 = _kernels.profile_solve(values, d, perms, new)
                if t2 < t - opts.tol:
                    codes, y, t, improved = new, y2, t2, True
            if not improved and neighborhood:
                for i in range(1, fmap.k):
                    for c in range(len(perms)):
                        if c == codes[i]:
                            continue
                        trial = codes.copy()
                        trial[i] = c
                        y2, t2 = _kernels.profile_solve(values, d, perms, trial)
                        if t2 < t - opts.tol:
                            codes, y, t, improved = trial, y2, t2, True
            if not improved:
                break
        if t < best_t:
            best_t, best_y = t, y
    return QConfig(np.asarray(best_y).reshape(fmap.Q, fmap.n))


def nearest_point_extension(fmap, p):
    """Copy the value of the anchor nearest to ``p``.

    Ties within 1e-12 go to the lexicographically smallest anchor point. If
    ``p`` sits on an anchor the stretch is taken over the remaining anchors.
    """
    if fmap.k == 0:
        raise ValueError("map has no anchors")
    d = anchor_distances(fmap, p)
    tied = np.flatnonzero(d <= d.min() + COINCIDENCE_TOL)
    order = np.lexsort(fmap.points[tied].T[::-1])
    j = int(tied[order[0]])
    value = fmap.value(j)
    away = np.flatnonzero(d >= COINCIDENCE_TOL)
    if away.size == fmap.k:
        return _result(fmap, p, value, HEURISTIC, pair_lower_bound(fmap, p))
    from .lipmap import AnchoredMap  # local: only needed on the coincident path

    rest = AnchoredMap(fmap.points[away], fmap.values[away])
    if rest.k == 0:
        return ExtensionResult(canonicalize(value), 0.0,
                               tuple(optimal_matching(value, fmap.value(i)) for i in range(fmap.k)),
                               tuple(range(fmap.k)), HEURISTIC, 0.0)
    sub = _result(rest, p, value, HEURISTIC, pair_lower_bound(rest, p))
    return ExtensionResult(sub.value, sub.stretch,
                           tuple(optimal_matching(value, fmap.value(i)) for i in range(fmap.k)),
                           tuple(int(away[i]) for i in sub.active_anchors), HEURISTIC,
                           sub.lower_bound)


def _lattice_ball(n, step, radius):
    half = int(math.ceil(radius / step)) + 1
    if (2 * half + 1) ** n > 5e8:
        raise CapacityError(f"grid with {(2 * half + 1) ** n} lattice points is too large")
    ticks = step * np.arange(-half, half + 1)
    grid = np.stack(np.meshgrid(*([ticks] * n), indexing="ij"), axis=-1).reshape(-1, n)
    return np.ascontiguousarray(grid[np.linalg.norm(grid, axis=1) <= radius])


def certify_grid(fmap, p, grid_step, max_evals=10**9, upper=None):
    """Grid certificate for the smallest stretch at ``p``.

    Any configuration with an atom of norm above
    ``R = min_i (max_a |f_i[a]| + d_i * upper)`` has stretch above ``upper``,
    so only atoms in the ball of radius ``R`` matter. The lattice of spacing
    ``grid_step`` places every such atom within ``sqrt(n)/2 * grid_step`` of a
    lattice point, and the stretch is ``1/min d_i``-Lipschitz in G, so the
    grid minimum minus ``sqrt(Q n)/2 * grid_step / min d_i`` is a lower bound.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    d = _check_point(fmap, p)
    Q, n = fmap.Q, fmap.n
    if upper is None:
        upper = solve_one_point(fmap, p, ExtendOptions(allow_heuristic=True)).stretch
    half_diag = math.sqrt(n) / 2 * grid_step
    norms = np.linalg.norm(fmap.values, axis=2).max(axis=1)
    radius = float(np.min(norms + d * upper))
    grid = _lattice_ball(n, grid_step, radius + half_diag)
    G = grid.shape[0]
    evals = math.comb(G + Q - 1, Q)
    if evals > max_evals:
        raise CapacityError(f"grid sweep needs {evals} evaluations, limit {max_evals}")
    diff = grid[None, None, :, :] - fmap.values[:, :, None, :]
    D = np.ascontiguousarray(np.einsum("kqgn,kqgn->kqg", diff, diff) / (d ** 2)[:, None, None])
    best_sq, idx = _kernels.grid_min_stretch(D, permutation_table(Q))
    grid_stretch = math.sqrt(best_sq)
    modulus = math.sqrt(Q) * half_diag / float(d.min())
    bound = max(0.0, min(grid_stretch - modulus, upper))
    return GridCertificate(bound, grid_stretch, modulus, radius, G, evals,
                           canonicalize(QConfig(grid[np.asarray(idx)])))


def certified_lower_bound(fmap, p, grid_step, max_evals=10**9):
    """Number ``L`` such that every value at ``p`` has stretch at least ``L``."""
    return certify_grid(fmap, p, grid_step, max_evals).bound


def weighted_one_center(centers, weights):
    """Minimize ``max_i |y - centers[i]| / weights[i]``; returns ``(y, value)``."""
    C = np.ascontiguousarray(centers, dtype=float)
    w = np.ascontiguousarray(weights, dtype=float)
    y, t = _kernels.one_center(C, w)
    return np.asarray(y), float(t)
