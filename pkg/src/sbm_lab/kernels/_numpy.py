"""Pure-numpy kernels.

Every function here has a twin with the same signature in ``_numba``; both
consume identical inputs (including pre-drawn random integers) so the two
backends return identical integers and entropies equal to rounding.
"""
import numpy as np
from scipy.special import gammaln


def log_multiset_array(positions, edges):
    positions = np.asarray(positions, dtype=np.float64)
    edges = np.asarray(edges, dtype=np.float64)
    out = gammaln(positions + edges) - gammaln(edges + 1.0) - gammaln(positions)
    # C(p - 1, 0) = 1 exactly; avoids inf - inf when positions == 0
    return np.where(edges == 0.0, 0.0, out)


def entropy_sum(sizes, M):
    sizes = np.asarray(sizes, dtype=np.float64)
    positions = np.outer(sizes, sizes)
    return float(log_multiset_array(positions, M).sum())


def block_matrix(W, assignment, p):
    Z = np.zeros((assignment.shape[0], p), dtype=np.int64)
    Z[np.arange(assignment.shape[0]), assignment] = 1
    return Z.T @ W @ Z


def floyd_subset(n_slots, draws):
    """Sorted uniform ``len(draws)``-subset of ``range(n_slots)``.

    ``draws[t]`` must be uniform on ``[0, n_slots - m + t]``.
    """
    m = draws.shape[0]
    chosen = set()
    base = n_slots - m
    for t in range(m):
        j = base + t
        r = int(draws[t])
        chosen.add(j if r in chosen else r)
    return np.sort(np.fromiter(chosen, dtype=np.int64, count=m))


def stars_to_counts(stars, positions):
    # star number k sitting in slot x has x - k bars before it
    return np.bincount(stars - np.arange(stars.shape[0]), minlength=positions)


def block_counts_batch(positions, draws):
    n_slots = positions + draws.shape[1] - 1
    out = np.empty((draws.shape[0], positions), dtype=np.int64)
    for r in range(draws.shape[0]):
        out[r] = stars_to_counts(floyd_subset(n_slots, draws[r]), positions)
    return out


def _move(W, assignment, M, x, dst):
    src = assignment[x]
    p = M.shape[0]
    out_w = W[x].astype(np.float64)
    in_w = W[:, x].astype(np.float64)
    loop = W[x, x]
    out_w[x] = 0.0
    in_w[x] = 0.0
    row = np.bincount(assignment, weights=out_w, minlength=p).astype(np.int64)
    col = np.bincount(assignment, weights=in_w, minlength=p).astype(np.int64)
    M[src, :] -= row
    M[dst, :] += row
    M[:, src] -= col
    M[:, dst] += col
    M[src, src] -= loop
    M[dst, dst] += loop
    assignment[x] = dst


def _touched_entropy(M, positions, a, b):
    rows = log_multiset_array(positions[[a, b], :], M[[a, b], :]).sum()
    mask = np.ones(M.shape[0], dtype=bool)
    mask[[a, b]] = False
    cols = log_multiset_array(positions[mask][:, [a, b]], M[mask][:, [a, b]]).sum()
    return rows + cols


def hill_climb(W, assignment, M, sizes, pair_u, pair_v, budget, tol):
    """First-improvement swap search; mutates ``assignment`` and ``M``.

    Returns ``(evaluated, accepted)``.
    """
    positions = np.outer(sizes, sizes).astype(np.float64)
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
        before = _touched_entropy(M, positions, a, b)
        _move(W, assignment, M, u, b)
        _move(W, assignment, M, v, a)
        after = _touched_entropy(M, positions, a, b)
        if after - before < -tol:
            accepted += 1
            since_accept = 0
        else:
            _move(W, assignment, M, v, b)
            _move(W, assignment, M, u, a)
            since_accept += 1
    return evaluated, accepted
