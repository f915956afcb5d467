"""Unordered Q-point configurations and the permutation-minimizing distance.

A configuration is a multiset of ``Q`` atoms in R^n. The distance between two
configurations is the root of the smallest sum of squared atom distances over
all pairings of their atoms.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, SizeLimitError

EQ_TOL = 1e-12
BRUTEFORCE_MAX_Q = 8


def as_point(coords, dim=None):
    """Validate ``coords`` as a finite 1-d float array, optionally of length ``dim``."""
    x = np.asarray(coords, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DimensionMismatchError(f"point must be a nonempty vector, got shape {x.shape}")
    if dim is not None and x.size != dim:
        raise DimensionMismatchError(f"point has dim {x.size}, expected {dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    return x


def _lex_order(atoms):
    # np.lexsort uses the last key as primary
    return np.lexsort(atoms.T[::-1])


class QConfig:
    """A multiset of ``Q`` atoms in R^n.

    Atoms are kept in the order given; equality and hashing go through the
    canonical (lexicographically sorted) form.
    """

    __slots__ = ("atoms",)

    def __init__(self, atoms):
        a = np.array(atoms, dtype=float)
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise DimensionMismatchError(f"atoms must have shape (Q, n), got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("atom coordinates must be finite")
        a.setflags(write=False)
        self.atoms = a

    @property
    def Q(self):
        return self.atoms.shape[0]

    @property
    def n(self):
        return self.atoms.shape[1]

    def canonical(self):
        return canonicalize(self)

    def __eq__(self, other):
        if not isinstance(other, QConfig):
            return NotImplemented
        if self.atoms.shape != other.atoms.shape:
            return False
        return bool(np.array_equal(canonicalize(self).atoms, canonicalize(other).atoms))

    def __hash__(self):
        return hash((self.atoms.shape, canonicalize(self).atoms.tobytes()))

    def __repr__(self):
        return f"QConfig({self.atoms.tolist()!r})"


@dataclass(frozen=True)
class Matching:
    """Pairing of atom ``i`` of the first configuration with atom ``perm[i]`` of the second."""

    perm: tuple
    cost: float


def canonicalize(config):
    atoms = config.atoms
    return QConfig(atoms[_lex_order(atoms)])


def _check_compatible(t1, t2):
    if t1.atoms.shape != t2.atoms.shape:
        raise DimensionMismatchError(
            f"configurations differ: (Q, n) = {t1.atoms.shape} vs {t2.atoms.shape}")


def cost_matrix(a, b):
    """Squared Euclidean distances between rows of ``a`` and rows of ``b``."""
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def g_distance(t1, t2):
    _check_compatible(t1, t2)
    _, total = _kernels.assignment(cost_matrix(t1.atoms, t2.atoms))
    return math.sqrt(max(total, 0.0))


def g_distance_bruteforce(t1, t2):
    _check_compatible(t1, t2)
    Q = t1.Q
    if Q > BRUTEFORCE_MAX_Q:
        raise SizeLimitError(f"brute force limited to Q <= {BRUTEFORCE_MAX_Q}, got Q = {Q}")
    cost = cost_matrix(t1.atoms, t2.atoms)
    perms = np.array(list(itertools.permutations(range(Q))))
    return math.sqrt(float(cost[np.arange(Q), perms].sum(axis=1).min()))


def optimal_matching(t1, t2):
    """Cost-minimizing pairing of the canonical forms of ``t1`` and ``t2``.

    Among pairings whose cost is within 1e-12 of the optimum, the
    lexicographically smallest permutation is returned.
    """
    _check_compatible(t1, t2)
    a = canonicalize(t1).atoms
    b = canonicalize(t2).atoms
    cost = cost_matrix(a, b)
    Q = cost.shape[0]
    _, best = _kernels.assignment(cost)
    slack = EQ_TOL * max(1.0, best)
    perm = []
    prefix = 0.0
    cols = list(range(Q))
    for i in range(Q):
        rest_rows = list(range(i + 1, Q))
        totals = []
        for j in cols:
            rest_cols = [c for c in cols if c != j]
            tail = 0.0
            if rest_rows:
                _, tail = _kernels.assignment(np.ascontiguousarray(cost[np.ix_(rest_rows, rest_cols)]))
            totals.append(prefix + cost[i, j] + tail)
            if totals[-1] <= best + slack:
                break
        # rounding can push every completion past the slack; take the cheapest
        j = cols[len(totals) - 1] if totals[-1] <= best + slack else cols[int(np.argmin(totals))]
        perm.append(j)
        prefix += cost[i, j]
        cols = [c for c in cols if c != j]
    return Matching(tuple(perm), float(cost[np.arange(Q), perm].sum()))
