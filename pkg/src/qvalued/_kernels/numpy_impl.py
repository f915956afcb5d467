"""Pure-numpy kernels, same contracts as ``numba_impl``."""
import itertools

import numpy as np

_PIVOT_EPS = 1e-12


def assignment(cost):
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = cost[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
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
    perm[p[1:] - 1] = np.arange(n)
    return perm, float(cost[np.arange(n), perm].sum())


def _objective(C, w, y):
    return float(np.max(np.linalg.norm(C - y, axis=1) / w))


def _support_candidates(C, w, idx):
    """Candidate centers equidistant (in weighted terms) from ``C[idx]``."""
    c0 = C[idx[0]]
    if len(idx) == 1:
        return [c0]
    E = C[idx[1:]] - c0
    G = E @ E.T
    if np.min(np.abs(np.linalg.eigvalsh(G))) <= _PIVOT_EPS * np.max(np.abs(np.diag(G))):
        return []
    w0sq = w[idx[0]] ** 2
    rhs = np.column_stack([0.5 * np.diag(G), -0.5 * (w[idx[1:]] ** 2 - w0sq)])
    a0, a1 = np.linalg.solve(G, rhs).T
    qa = a1 @ G @ a1
    qb = 2.0 * (a0 @ G @ a1) - w0sq
    qc = a0 @ G @ a0
    if abs(qa) <= 1e-14 * (abs(qb) + abs(qc) + 1e-300):
        roots = [-qc / qb] if qb != 0.0 else []
    else:
        sq = np.sqrt(max(qb * qb - 4.0 * qa * qc, 0.0))
        q = -0.5 * (qb + sq) if qb >= 0.0 else -0.5 * (qb - sq)
        roots = [q / qa] + ([qc / q] if q != 0.0 else [])
    return [c0 + (a0 + tau * a1) @ E for tau in roots if tau >= 0.0]


def _enumerate_supports(C, w, members):
    max_size = min(len(members), C.shape[1] + 1)
    best_t, best_y = np.inf, C[members[0]].copy()
    sub_C, sub_w = C[members], w[members]
    for size in range(1, max_size + 1):
        for idx in itertools.combinations(range(len(members)), size):
            for y in _support_candidates(sub_C, sub_w, list(idx)):
                t = _objective(sub_C, sub_w, y)
                if t < best_t:
                    best_t, best_y = t, y
    return best_y, best_t


def one_center(C, w):
    k = C.shape[0]
    if k <= 6:
        return _enumerate_supports(C, w, list(range(k)))
    work = [0]
    best_full, best_y = np.inf, C[0].copy()
    for _ in range(100 * k):
        y, t_work = _enumerate_supports(C, w, work)
        ratios = np.linalg.norm(C - y, axis=1) / w
        full = float(ratios.max())
        if full < best_full:
            best_full, best_y = full, y
        if full <= t_work * (1.0 + 1e-12) + 1e-15:
            break
        work = [i for i in work if ratios[i] >= t_work * (1.0 - 1e-9)]
        work.append(int(np.argmax(ratios)))
    return best_y, best_full


def _profile_centers(values, perms, codes):
    k = values.shape[0]
    return np.stack([values[i, perms[codes[i]]].ravel() for i in range(k)])


def profile_solve(values, w, perms, codes):
    return one_center(_profile_centers(values, perms, codes), w)


def profile_sweep(values, w, perms):
    k, Q, n = values.shape
    best_t, best_y, best_codes = np.inf, np.zeros(Q * n), np.zeros(k, dtype=np.int64)
    for tail in itertools.product(range(perms.shape[0]), repeat=k - 1):
        codes = np.array((0,) + tail, dtype=np.int64)
        y, t = profile_solve(values, w, perms, codes)
        if t < best_t:
            best_t, best_y, best_codes = t, y, codes
    return best_t, best_y, best_codes


def grid_min_stretch(D, perms):
    k, Q, G = D.shape
    best, best_idx = np.inf, np.zeros(Q, dtype=np.int64)
    # all but the last index enumerated, last one vectorized
    for head in itertools.combinations_with_replacement(range(G), Q - 1):
        start = head[-1] if head else 0
        worst = np.zeros(G - start)
        for i in range(k):
            cost_i = np.full(G - start, np.inf)
            for perm in perms:
                fixed = sum(D[i, perm[j], head[j]] for j in range(Q - 1))
                np.minimum(cost_i, fixed + D[i, perm[Q - 1], start:], out=cost_i)
            np.maximum(worst, cost_i, out=worst)
        g = int(np.argmin(worst))
        if worst[g] < best:
            best = float(worst[g])
            best_idx = np.array(head + (start + g,), dtype=np.int64)
    return best, best_idx
