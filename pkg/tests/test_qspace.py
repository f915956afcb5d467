import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qvalued.errors import DimensionMismatchError, SizeLimitError
from qvalued.qspace import (QConfig, canonicalize, g_distance, g_distance_bruteforce,
                            optimal_matching)

H = math.sqrt(3) / 2
F_A = QConfig([[0, 1], [0, -1]])
F_B = QConfig([[H, 0.5], [-H, -0.5]])
F_C = QConfig([[H, -0.5], [-H, 0.5]])

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def config_pairs(draw, count=2):
    Q = draw(st.integers(1, 5))
    n = draw(st.integers(1, 3))
    return [QConfig(draw(arrays(float, (Q, n), elements=coord))) for _ in range(count)]


@pytest.mark.parametrize("atoms, expected", [
    ([[1, 0], [0, 1]], [[0, 1], [1, 0]]),
    ([[0, 0], [0, 0]], [[0, 0], [0, 0]]),
    ([[0, -1], [0, 1]], [[0, -1], [0, 1]]),
])
def test_canonicalize(atoms, expected):
    assert canonicalize(QConfig(atoms)).atoms.tolist() == expected


def test_equality_goes_through_canonical_form():
    assert QConfig([[1, 0], [0, 1]]) == QConfig([[0, 1], [1, 0]])
    assert hash(QConfig([[1, 0], [0, 1]])) == hash(QConfig([[0, 1], [1, 0]]))
    assert QConfig([[0, 0], [0, 0]]) != QConfig([[0, 0], [0, 1]])


def test_rejects_bad_atoms():
    with pytest.raises(DimensionMismatchError):
        QConfig([1.0, 2.0])
    with pytest.raises(ValueError):
        QConfig([[np.nan, 0.0]])


@pytest.mark.parametrize("dist", [g_distance, g_distance_bruteforce])
def test_hexagon_pairs_at_sqrt2(dist):
    for a, b in ((F_A, F_B), (F_A, F_C), (F_B, F_C)):
        assert dist(a, b) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_distance_to_self_is_zero(rng):
    t = QConfig(rng.normal(size=(4, 3)))
    assert g_distance(t, t) == 0.0


def test_single_atom_is_euclidean():
    p, s = QConfig([[1.0, 2.0, 3.0]]), QConfig([[4.0, 6.0, 3.0]])
    assert g_distance_bruteforce(p, s) == pytest.approx(5.0)
    assert g_distance(p, s) == pytest.approx(5.0)


def test_mismatch_errors():
    with pytest.raises(DimensionMismatchError):
        g_distance(QConfig([[0, 0]]), QConfig([[0, 0], [1, 1]]))
    with pytest.raises(DimensionMismatchError):
        optimal_matching(QConfig([[0, 0]]), QConfig([[0, 0, 0]]))


def test_bruteforce_size_guard():
    t = QConfig(np.zeros((9, 1)))
    with pytest.raises(SizeLimitError):
        g_distance_bruteforce(t, t)


def test_bruteforce_agrees_q4_n3(rng):
    for _ in range(50):
        a, b = QConfig(rng.normal(size=(4, 3))), QConfig(rng.normal(size=(4, 3)))
        assert g_distance(a, b) == pytest.approx(g_distance_bruteforce(a, b), abs=1e-9)


def test_matching_hexagon_pair():
    # canonical f(A) = [(0,-1), (0,1)], canonical f(B) = [(-h,-1/2), (h,1/2)];
    # the two pairings cost 2 and 6
    m = optimal_matching(F_A, F_B)
    assert m.perm == (0, 1)
    assert m.cost == pytest.approx(2.0, abs=1e-12)


def test_matching_identity_and_ties(rng):
    t = QConfig(rng.normal(size=(5, 2)))
    m = optimal_matching(t, t)
    assert m.perm == tuple(range(5)) and m.cost == 0.0
    m = optimal_matching(QConfig([[0, 0], [0, 0]]), QConfig([[1, 0], [1, 0]]))
    assert m.perm == (0, 1) and m.cost == pytest.approx(2.0)


def test_matching_cost_recomputes(rng):
    for _ in range(50):
        a, b = QConfig(rng.normal(size=(4, 2))), QConfig(rng.normal(size=(4, 2)))
        m = optimal_matching(a, b)
        ca, cb = canonicalize(a).atoms, canonicalize(b).atoms
        recomputed = float(np.sum((ca - cb[list(m.perm)]) ** 2))
        assert sorted(m.perm) == list(range(4))
        assert m.cost == pytest.approx(recomputed, abs=1e-12)
        assert m.cost == pytest.approx(g_distance(a, b) ** 2, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(config_pairs())
def test_symmetry(pair):
    a, b = pair
    assert abs(g_distance(a, b) - g_distance(b, a)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(config_pairs(), st.randoms(use_true_random=False))
def test_permutation_invariance(pair, rnd):
    a, b = pair
    order = list(range(a.Q))
    rnd.shuffle(order)
    assert abs(g_distance(QConfig(a.atoms[order]), b) - g_distance(a, b)) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(config_pairs(count=3))
def test_triangle_inequality(triple):
    a, b, c = triple
    assert g_distance(a, c) <= g_distance(a, b) + g_distance(b, c) + 1e-9


@settings(max_examples=100, deadline=None)
@given(config_pairs(), st.lists(coord, min_size=3, max_size=3), st.floats(0, 5))
def test_translation_and_scaling(pair, shift, lam):
    a, b = pair
    v = np.array(shift[:a.n])
    base = g_distance(a, b)
    assert g_distance(QConfig(a.atoms + v), QConfig(b.atoms + v)) == pytest.approx(base, abs=1e-9)
    assert g_distance(QConfig(lam * a.atoms), QConfig(lam * b.atoms)) == pytest.approx(lam * base, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(config_pairs(), st.randoms(use_true_random=False))
def test_identity_of_indiscernibles(pair, rnd):
    a, b = pair
    order = list(range(a.Q))
    rnd.shuffle(order)
    assert g_distance(a, QConfig(a.atoms[order])) == 0.0
    # smallest over matchings of the largest atom displacement; G is at least this
    gap = min(np.abs(a.atoms - b.atoms[list(s)]).max()
              for s in itertools.permutations(range(a.Q)))
    if gap > 1e-9:
        assert g_distance(a, b) > 1e-12
    elif gap == 0.0:
        assert g_distance(a, b) == 0.0
