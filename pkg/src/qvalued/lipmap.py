"""Finitely anchored multi-valued maps and their Lipschitz constants."""
from __future__ import annotations

import math

import numpy as np

from .errors import CoincidenceError, DimensionMismatchError, NonLipschitzError
from .qspace import QConfig, as_point, canonicalize, g_distance

COINCIDENCE_TOL = 1e-12


class AnchoredMap:
    """A map from finitely many anchor points in R^m to configurations in A_Q(R^n).

    Stored as two arrays: ``points`` of shape (k, m) and ``values`` of shape
    (k, Q, n), each value in canonical atom order.
    """

    __slots__ = ("points", "values")

    def __init__(self, points, values):
        pts = np.array(points, dtype=float)
        vals = np.array(values, dtype=float)
        if pts.ndim != 2 or pts.shape[1] == 0:
            raise DimensionMismatchError(f"anchor points must have shape (k, m), got {pts.shape}")
        if vals.ndim != 3 or vals.shape[0] != pts.shape[0] or 0 in vals.shape[1:]:
            raise DimensionMismatchError(
                f"values must have shape (k, Q, n) with k = {pts.shape[0]}, got {vals.shape}")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(vals))):
            raise ValueError("anchor data must be finite")
        for i in range(vals.shape[0]):
            vals[i] = canonicalize(QConfig(vals[i])).atoms
        _check_coincidences(pts, vals)
        pts.setflags(write=False)
        vals.setflags(write=False)
        self.points = pts
        self.values = vals

    @classmethod
    def from_pairs(cls, pairs, m=None, Q=None, n=None):
        """Build from ``[(x, QConfig), ...]``; dims are needed only for an empty list."""
        pairs = list(pairs)
        if not pairs:
            if None in (m, Q, n):
                raise DimensionMismatchError("empty map needs explicit m, Q and n")
            return cls(np.zeros((0, m)), np.zeros((0, Q, n)))
        points = [as_point(x) for x, _ in pairs]
        values = [t.atoms if isinstance(t, QConfig) else np.asarray(t, dtype=float) for _, t in pairs]
        if len({p.size for p in points}) != 1:
            raise DimensionMismatchError("anchor points have different dimensions")
        if len({v.shape for v in values}) != 1:
            raise DimensionMismatchError("anchor values have different (Q, n)")
        return cls(np.stack(points), np.stack(values))

    @property
    def k(self):
        return self.points.shape[0]

    @property
    def m(self):
        return self.points.shape[1]

    @property
    def Q(self):
        return self.values.shape[1]

    @property
    def n(self):
        return self.values.shape[2]

    def value(self, i):
        return QConfig(self.values[i])

    def anchors(self):
        return [(self.points[i], self.value(i)) for i in range(self.k)]

    def with_anchor(self, x, t):
        x = as_point(x, self.m)
        return AnchoredMap(np.vstack([self.points, x]), np.concatenate([self.values, t.atoms[None]]))

    def __eq__(self, other):
        if not isinstance(other, AnchoredMap):
            return NotImplemented
        return (np.array_equal(self.points, other.points)
                and np.array_equal(self.values, other.values))

    __hash__ = None

    def __repr__(self):
        return f"AnchoredMap(k={self.k}, m={self.m}, Q={self.Q}, n={self.n})"


def _check_coincidences(points, values):
    k = points.shape[0]
    for i in range(k):
        for j in range(i + 1, k):
            if np.linalg.norm(points[i] - points[j]) < COINCIDENCE_TOL:
                if g_distance(QConfig(values[i]), QConfig(values[j])) > COINCIDENCE_TOL:
                    raise NonLipschitzError(
                        f"anchors {i} and {j} coincide but carry different values")


def lip_constant(fmap):
    """Largest ratio G(f(x_i), f(x_j)) / |x_i - x_j| over anchor pairs; 0 for k <= 1."""
    best = 0.0
    for i in range(fmap.k):
        for j in range(i + 1, fmap.k):
            dx = float(np.linalg.norm(fmap.points[i] - fmap.points[j]))
            if dx < COINCIDENCE_TOL:
                continue  # equal values, enforced at construction
            best = max(best, g_distance(fmap.value(i), fmap.value(j)) / dx)
    return best


def anchor_distances(fmap, p):
    p = as_point(p, fmap.m)
    return np.linalg.norm(fmap.points - p, axis=1)


def stretch_terms(fmap, p, t):
    """Per-anchor ratios G(t, f(x_i)) / |p - x_i|."""
    if t.atoms.shape != fmap.values.shape[1:]:
        raise DimensionMismatchError(
            f"candidate has (Q, n) = {t.atoms.shape}, map has {fmap.values.shape[1:]}")
    d = anchor_distances(fmap, p)
    if fmap.k and d.min() < COINCIDENCE_TOL:
        raise CoincidenceError(f"point coincides with anchor {int(np.argmin(d))}")
    return np.array([g_distance(t, fmap.value(i)) / d[i] for i in range(fmap.k)])


def stretch_at(fmap, p, t):
    terms = stretch_terms(fmap, p, t)
    return float(terms.max()) if terms.size else 0.0


def pair_lower_bound(fmap, p):
    """Lower bound on the stretch of any value at ``p`` from the triangle inequality.

    For anchors i, j: G(f_i, f_j) <= G(T, f_i) + G(T, f_j) <= s (d_i + d_j).
    """
    d = anchor_distances(fmap, p)
    best = 0.0
    for i in range(fmap.k):
        for j in range(i + 1, fmap.k):
            best = max(best, g_distance(fmap.value(i), fmap.value(j)) / (d[i] + d[j]))
    return best if math.isfinite(best) else 0.0
