"""numba-compiled twins of the kernels in ``_numpy``."""
import math

import numpy as np
from numba import njit

_jit = njit(cache=True, nogil=True)


@_jit
def _lm(positions, edges):
    if edges == 0.0:
        return 0.0
    return math.lgamma(positions + edges) - math.lgamma(edges + 1.0) - math.lgamma(positions)


@_jit
def _log_multiset_flat(positions, edges, out):
    for i in range(positions.shape[0]):
        out[i] = _lm(positions[i], edges[i])


def log_multiset_array(positions, edges):
    positions, edges = np.broadcast_arrays(
        np.asarray(positions, dtype=np.float64), np.asarray(edges, dtype=np.float64)
    )
    out = np.empty(positions.size, dtype=np.float64)
    _log_multiset_flat(np.ascontiguousarray(positions).ravel(),
                       np.ascontiguousarray(edges).ravel(), out)
    return out.reshape(positions.shape)


@_jit
def _entropy_sum(sizes, M):
    p = sizes.shape[0]
    total = 0.0
    for a in range(p):
        for b in range(p):
            total += _lm(float(sizes[a]) * float(sizes[b]), float(M[a, b]))
    return total


def entropy_sum(sizes, M):
    return float(_entropy_sum(np.asarray(sizes, dtype=np.int64),
                              np.asarray(M, dtype=np.float64)))


@_jit
def block_matrix(W, assignment, p):
    n = W.shape[0]
    M = np.zeros((p, p), dtype=np.int64)
    for i in range(n):
        a = assignment[i]
        for j in range(n):
            w = W[i, j]
            if w != 0:
                M[a, assignment[j]] += w
    return M


@_jit
def floyd_subset(n_slots, draws):
    m = draws.shape[0]
    chosen = set()
    chosen.add(np.int64(-1))
    chosen.discard(np.int64(-1))
    out = np.empty(m, dtype=np.int64)
    base = n_slots - m
    for t in range(m):
        j = np.int64(base + t)
        r = np.int64(draws[t])
        pick = j if r in chosen else r
        chosen.add(pick)
        out[t] = pick
    out.sort()
    return out


@_jit
def stars_to_counts(stars, positions):
    counts = np.zeros(positions, dtype=np.int64)
    for k in range(stars.shape[0]):
        counts[stars[k] - k] += 1
    return counts


@_jit
def block_counts_batch(positions, draws):
    n_slots = positions + draws.shape[1] - 1
    out = np.empty((draws.shape[0], positions), dtype=np.int64)
    for r in range(draws.shape[0]):
        out[r] = stars_to_counts(floyd_subset(n_slots, draws[r]), positions)
    return out


@_jit
def _move(W, assignment, M, x, dst):
    src = assignment[x]
    n = W.shape[0]
    for j in range(n):
        if j == x:
            continue
        c = assignment[j]
        w = W[x, j]
        if w != 0:
            M[src, c] -= w
            M[dst, c] += w
        w = W[j, x]
        if w != 0:
            M[c, src] -= w
            M[c, dst] += w
    loop = W[x, x]
    M[src, src] -= loop
    M[dst, dst] += loop
    assignment[x] = dst


@_jit
def _touched_entropy(M, sizes, a, b):
    p = M.shape[0]
    total = 0.0
    for r in (a, b):
        for c in range(p):
            total += _lm(float(sizes[r]) * float(sizes[c]), float(M[r, c]))
    for r in range(p):
        if r == a or r == b:
            continue
        for c in (a, b):
            total += _lm(float(sizes[r]) * float(sizes[c]), float(M[r, c]))
    return total


@_jit
def hill_climb(W, assignment, M, sizes, pair_u, pair_v, budget, tol):
    evaluated = 0
    accepted = 0
    n_pairs = pair_u.shape[0]
    if n_pairs == 0:
        return evaluated, accepted
    since_accept = 0
    i = 0
    while evaluated < budget and since_accept < n_pairs:
        u = pair_u[i]
        v = pair_v[i]
        i = (i + 1) % n_pairs
        a = assignment[u]
        b = assignment[v]
        if a == b:
            since_accept += 1
            continue
        evaluated += 1
        before = _touched_entropy(M, sizes, a, b)
        _move(W, assignment, M, u, b)
        _move(W, assignment, M, v, a)
        after = _touched_entropy(M, sizes, a, b)
        if after - before < -tol:
            accepted += 1
            since_accept = 0
        else:
            _move(W, assignment, M, v, b)
            _move(W, assignment, M, u, a)
            since_accept += 1
    return evaluated, accepted
