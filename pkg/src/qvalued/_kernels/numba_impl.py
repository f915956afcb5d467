"""Compiled kernels.

Every function here has a twin of the same name and signature in
``numpy_impl``; the two are cross-checked by the test suite.
"""
import numba
import numpy as np
from numba import njit, prange

# TBB builds shipped with some distros are too old for numba and only warn;
# OpenMP is always bundled.
if numba.config.THREADING_LAYER == "default":
    numba.config.THREADING_LAYER = "omp"

_PIVOT_EPS = 1e-12


@njit(cache=True)
def assignment(cost):
    """Hungarian method with potentials on a square cost matrix.

    Returns ``(perm, total)`` with ``perm[i]`` the column matched to row ``i``.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=np.bool_)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        perm[p[j] - 1] = j - 1
    total = 0.0
    for i in range(n):
        total += cost[i, perm[i]]
    return perm, total


@njit(cache=True)
def _solve_small(A, b):
    # Gaussian elimination with partial pivoting; ok=False on (near) singular A.
    m = A.shape[0]
    M = A.copy()
    x = b.copy()
    scale = 0.0
    for i in range(m):
        scale = max(scale, abs(M[i, i]))
    if scale == 0.0:
        return False, x
    for c in range(m):
        piv = c
        for r in range(c + 1, m):
            if abs(M[r, c]) > abs(M[piv, c]):
                piv = r
        if abs(M[piv, c]) <= _PIVOT_EPS * scale:
            return False, x
        if piv != c:
            for j in range(m):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
            tmp = x[c]
            x[c] = x[piv]
            x[piv] = tmp
        for r in range(c + 1, m):
            f = M[r, c] / M[c, c]
            for j in range(c, m):
                M[r, j] -= f * M[c, j]
            x[r] -= f * x[c]
    for c in range(m - 1, -1, -1):
        s = x[c]
        for j in range(c + 1, m):
            s -= M[c, j] * x[j]
        x[c] = s / M[c, c]
    return True, x


@njit(cache=True)
def _objective(C, w, y, members, count):
    worst = 0.0
    for a in range(count):
        i = members[a]
        s = 0.0
        for d in range(C.shape[1]):
            diff = y[d] - C[i, d]
            s += diff * diff
        r = np.sqrt(s) / w[i]
        if r > worst:
            worst = r
    return worst


@njit(cache=True)
def _support_candidates(C, w, idx, members, count, best_t, best_y):
    """Try the equal-weighted-distance points of the support set ``idx``.

    Each candidate is scored by its true objective over ``members``; the
    running best is updated in place and returned.
    """
    m = idx.shape[0]
    D = C.shape[1]
    c0 = C[idx[0]]
    if m == 1:
        t = _objective(C, w, c0, members, count)
        if t < best_t:
            best_t = t
            best_y[:] = c0
        return best_t
    E = np.empty((m - 1, D))
    for a in range(1, m):
        for d in range(D):
            E[a - 1, d] = C[idx[a], d] - c0[d]
    G = E @ E.T
    r0 = np.empty(m - 1)
    r1 = np.empty(m - 1)
    w0sq = w[idx[0]] ** 2
    for a in range(m - 1):
        r0[a] = 0.5 * G[a, a]
        r1[a] = -0.5 * (w[idx[a + 1]] ** 2 - w0sq)
    ok0, a0 = _solve_small(G, r0)
    if not ok0:
        return best_t
    ok1, a1 = _solve_small(G, r1)
    if not ok1:
        return best_t
    Ga1 = G @ a1
    qa = a1 @ Ga1
    qb = 2.0 * (a0 @ Ga1) - w0sq
    qc = a0 @ (G @ a0)
    roots = np.empty(2)
    nroots = 0
    if abs(qa) <= 1e-14 * (abs(qb) + abs(qc) + 1e-300):
        if qb != 0.0:
            roots[0] = -qc / qb
            nroots = 1
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            disc = 0.0
        sq = np.sqrt(disc)
        # numerically stable pair of roots
        if qb >= 0.0:
            q = -0.5 * (qb + sq)
        else:
            q = -0.5 * (qb - sq)
        roots[0] = q / qa
        nroots = 1
        if q != 0.0:
            roots[1] = qc / q
            nroots = 2
    y = np.empty(D)
    for r in range(nroots):
        tau = roots[r]
        if tau < 0.0:
            continue
        alpha = a0 + tau * a1
        for d in range(D):
            y[d] = c0[d]
        for a in range(m - 1):
            for d in range(D):
                y[d] += alpha[a] * E[a, d]
        t = _objective(C, w, y, members, count)
        if t < best_t:
            best_t = t
            best_y[:] = y
    return best_t


@njit(cache=True)
def _enumerate_supports(C, w, members, count, best_y):
    D = C.shape[1]
    max_size = min(count, D + 1)
    best_t = np.inf
    idx_buf = np.empty(count, dtype=np.int64)
    for mask in range(1, 1 << count):
        m = 0
        for a in range(count):
            if mask & (1 << a):
                m += 1
        if m > max_size:
            continue
        j = 0
        for a in range(count):
            if mask & (1 << a):
                idx_buf[j] = members[a]
                j += 1
        best_t = _support_candidates(C, w, idx_buf[:m], members, count,
                                     best_t, best_y)
    return best_t


@njit(cache=True)
def one_center(C, w):
    """Minimize ``max_i |y - C[i]| / w[i]`` over ``y``.

    Exhaustive support enumeration for up to six centers, otherwise an
    active-set loop that re-solves on a growing working set.
    """
    k, D = C.shape
    y = C[0].copy()
    everyone = np.arange(k)
    if k <= 6:
        t = _enumerate_supports(C, w, everyone, k, y)
        return y, t
    work = np.empty(k, dtype=np.int64)
    work[0] = 0
    size = 1
    best_full = np.inf
    best_y = C[0].copy()
    for _ in range(100 * k):
        t_work = _enumerate_supports(C, w, work, size, y)
        full = _objective(C, w, y, everyone, k)
        if full < best_full:
            best_full = full
            best_y[:] = y
        if full <= t_work * (1.0 + 1e-12) + 1e-15:
            break
        # keep the tight members, add the worst violator
        new_size = 0
        for a in range(size):
            i = work[a]
            s = 0.0
            for d in range(D):
                s += (y[d] - C[i, d]) ** 2
            if np.sqrt(s) / w[i] >= t_work * (1.0 - 1e-9):
                work[new_size] = i
                new_size += 1
        worst = -1.0
        worst_i = 0
        for i in range(k):
            s = 0.0
            for d in range(D):
                s += (y[d] - C[i, d]) ** 2
            r = np.sqrt(s) / w[i]
            if r > worst:
                worst = r
                worst_i = i
        work[new_size] = worst_i
        size = new_size + 1
    return best_y, best_full


@njit(cache=True)
def _fill_profile(values, perms, codes, C):
    k, Q, n = values.shape
    for i in range(k):
        perm = perms[codes[i]]
        for j in range(Q):
            for d in range(n):
                C[i, j * n + d] = values[i, perm[j], d]


@njit(cache=True)
def profile_solve(values, w, perms, codes):
    """One-center subproblem for a single matching profile ``codes``."""
    k, Q, n = values.shape
    C = np.empty((k, Q * n))
    _fill_profile(values, perms, codes, C)
    return one_center(C, w)


@njit(cache=True)
def profile_sweep(values, w, perms):
    """Best one-center value over all profiles with anchor 0 fixed to identity.

    Returns ``(t, y, codes)``; ``codes[i]`` indexes ``perms`` for anchor ``i``.
    """
    k, Q, n = values.shape
    P = perms.shape[0]
    total = 1
    for _ in range(k - 1):
        total *= P
    C = np.empty((k, Q * n))
    codes = np.zeros(k, dtype=np.int64)
    best_codes = np.zeros(k, dtype=np.int64)
    best_t = np.inf
    best_y = np.zeros(Q * n)
    for code in range(total):
        rem = code
        for i in range(k - 1, 0, -1):
            codes[i] = rem % P
            rem //= P
        _fill_profile(values, perms, codes, C)
        y, t = one_center(C, w)
        if t < best_t:
            best_t = t
            best_y[:] = y
            best_codes[:] = codes
    return best_t, best_y, best_codes


@njit(parallel=True, cache=True)
def grid_min_stretch(D, perms):
    """Minimum of the squared stretch over all multisets of grid points.

    ``D[i, a, g]`` is the squared distance from grid point ``g`` to atom ``a``
    of anchor ``i`` divided by the squared anchor distance. Multisets are
    enumerated as nondecreasing index tuples.
    """
    k, Q, G = D.shape
    P = perms.shape[0]
    row_best = np.full(G, np.inf)
    row_arg = np.zeros((G, Q), dtype=np.int64)
    for g0 in prange(G):
        idx = np.full(Q, g0, dtype=np.int64)
        local_best = np.inf
        local_arg = idx.copy()
        while True:
            worst = 0.0
            for i in range(k):
                bi = np.inf
                for pp in range(P):
                    s = 0.0
                    for j in range(Q):
                        s += D[i, perms[pp, j], idx[j]]
                    if s < bi:
                        bi = s
                if bi > worst:
                    worst = bi
                    if worst >= local_best:
                        break
            if worst < local_best:
                local_best = worst
                local_arg[:] = idx
            pos = Q - 1
            while pos >= 1 and idx[pos] == G - 1:
                pos -= 1
            if pos == 0:
                break
            idx[pos] += 1
            for j in range(pos + 1, Q):
                idx[j] = idx[pos]
        row_best[g0] = local_best
        row_arg[g0] = local_arg
    g = np.argmin(row_best)
    return row_best[g], row_arg[g].copy()
