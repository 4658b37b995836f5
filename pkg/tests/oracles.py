"""Brute-force references used to freeze expected values.

Everything here enumerates the full space and shares no code with the
package beyond plain numpy.
"""

import heapq
import itertools

import numpy as np


def all_vectors(n):
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.uint8).reshape(-1, n)


def span(rows, n):
    rows = np.asarray(rows, dtype=np.uint8).reshape(-1, n)
    out = {tuple([0] * n)}
    for coeffs in itertools.product((0, 1), repeat=rows.shape[0]):
        v = np.zeros(n, dtype=np.int64)
        for c, r in zip(coeffs, rows):
            if c:
                v += r
        out.add(tuple(v % 2))
    return out


def rank(A):
    A = np.asarray(A, dtype=np.uint8)
    size = len(span(A, A.shape[1]))
    return size.bit_length() - 1


def kernel(H):
    H = np.asarray(H, dtype=np.int64)
    X = all_vectors(H.shape[1])
    return X[~((X @ H.T) % 2).any(axis=1)]


def min_weight(vectors):
    w = [int(v.sum()) for v in vectors if np.any(v)]
    return min(w)


def css_distance(checks, stabilizers):
    n = checks.shape[1]
    stab = span(stabilizers, n)
    return min(int(v.sum()) for v in kernel(checks) if tuple(v) not in stab)


def energy(H, x):
    return int(((np.asarray(H, dtype=np.int64) @ x) % 2).sum())


def barrier(H, n, is_target):
    """Minimax path cost from 0 to any state accepted by ``is_target``, via Dijkstra."""
    H = np.asarray(H, dtype=np.int64)
    cols = [int(sum(int(H[r, i]) << r for r in range(H.shape[0]))) for i in range(n)]
    best = {0: 0}
    syn = {0: 0}
    heap = [(0, 0)]
    done = set()
    while heap:
        cost, s = heapq.heappop(heap)
        if s in done:
            continue
        done.add(s)
        if s and is_target(s):
            return cost
        for i in range(n):
            t = s ^ (1 << i)
            syn[t] = syn[s] ^ cols[i]
            c = max(cost, bin(syn[t]).count("1"))
            if c < best.get(t, 1 << 30):
                best[t] = c
                heapq.heappush(heap, (c, t))
    raise ValueError("no target reachable")


def bits(state, n):
    return np.array([(state >> i) & 1 for i in range(n)], dtype=np.uint8)
