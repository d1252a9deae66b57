"""Shared oracles for the test suite: finite differences and random inputs."""

import numpy as np

from spdopt.linalg import sym
from spdopt.manifold import as_point, retract


def sym_basis(d):
    """Orthonormal-ish basis of symmetric d x d matrices."""
    basis = []
    for i in range(d):
        for j in range(i, d):
            e = np.zeros((d, d))
            e[i, j] = e[j, i] = 1.0
            basis.append(e)
    return basis


def fd_egrad(cost, s, h=1e-6):
    """Central-difference Euclidean gradient of a cost on symmetric matrices."""
    d = s.shape[0]
    g = np.zeros((d, d))
    for i in range(d):
        for j in range(i, d):
            e = np.zeros((d, d))
            e[i, j] = e[j, i] = 1.0
            df = (cost(sym(s + h * e)) - cost(sym(s - h * e))) / (2.0 * h)
            # df = <grad, e> = 2 g_ij for i != j, g_ii otherwise.
            if i == j:
                g[i, i] = df
            else:
                g[i, j] = g[j, i] = df / 2.0
    return g


def fd_retraction_slope(cost, x, xi, h=1e-5):
    """Central-difference slope of t -> cost(retract(x, t xi)) at t = 0."""
    x = as_point(x)
    return (cost(retract(x, h * xi)) - cost(retract(x, -h * xi))) / (2.0 * h)


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    denom = max(np.linalg.norm(b), 1e-300)
    return np.linalg.norm(a - b) / denom
