"""Reference computations that avoid the code paths under test."""

import itertools
import math

import numpy as np

from posigroup.measure import Func
from posigroup.perturbation import gap


def simplex_grid(n, step):
    """All points of the standard simplex in R^n with coordinates in step * Z."""
    k = int(round(1 / step))
    pts = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        edges = (-1,) + bars + (k + n - 1,)
        pts.append([edges[i + 1] - edges[i] - 1 for i in range(n)])
    return np.array(pts, dtype=float) / k


def gap_matrix(pair):
    """``W[i, j] = gap(e_j / m_j, e_i / m_i)`` evaluated through inner products."""
    sp, m, n = pair.space, pair.space.m, pair.space.n
    W = np.empty((n, n))
    for i in range(n):
        v = np.zeros(n)
        v[i] = 1 / m[i]
        for j in range(n):
            u = np.zeros(n)
            u[j] = 1 / m[j]
            W[i, j] = gap(pair, Func(sp, u), Func(sp, v))
    return W


def brute_force_c2(pair, step=0.05, chunk=64):
    """Max of the gap over L1-normalized nonnegative (u, v) on a simplex grid.

    With ``u = p / m`` and ``v = q / m`` for simplex points ``p``, ``q`` the
    gap is bilinear: ``q^T W p``.
    """
    P = simplex_grid(pair.space.n, step)
    W = gap_matrix(pair)
    WP = W @ P.T
    best = -math.inf
    for s in range(0, len(P), chunk):
        best = max(best, float((P[s:s + chunk] @ WP).max()))
    return best


def double_sum_form(m, j, u, v):
    """``1/2 sum_{i,k} (u_i - u_k)(v_i - v_k) j_ik m_i m_k`` by explicit loops."""
    total = 0.0
    n = len(m)
    for i in range(n):
        for k in range(n):
            total += 0.5 * (u[i] - u[k]) * (v[i] - v[k]) * j[i][k] * m[i] * m[k]
    return total


def inv2(M):
    (a, b), (c, d) = M
    det = a * d - b * c
    return np.array([[d, -b], [-c, a]]) / det


def expm_eig(A, t):
    """Exponential through an eigendecomposition (diagonalizable A only)."""
    w, V = np.linalg.eig(np.asarray(A, dtype=float))
    return np.real(V @ np.diag(np.exp(t * w)) @ np.linalg.inv(V))
