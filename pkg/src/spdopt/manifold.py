"""Riemannian geometry of the SPD manifold.

Intrinsic metric, gradient conversion, exponential-map retraction and
parallel transport, together with the two distances used throughout the
package: the Riemannian distance (Frobenius norm of the relative log) and
the Thompson part metric (operator norm of the same log).
"""

import threading

import numpy as np
import scipy.linalg

from .errors import DomainError, StepTooLarge
from .linalg import PD_RTOL, _rebuild, check_same_dim, sym, validate_symmetric

# Frobenius norm beyond which exp(X^-1 xi) is certain to overflow float64.
_EXP_OVERFLOW = 705.0


class ManifoldPoint:
    """An SPD matrix with cached derived factors.

    The eigendecomposition is computed at construction (which also validates
    positive definiteness); the inverse and the square-root factors are
    derived lazily and cached. Instances are immutable and safe to share
    across threads: the lazy caches are populated once under a lock.
    """

    __slots__ = ("value", "dim", "_eigvals", "_eigvecs", "_lock", "_cache")

    def __init__(self, value):
        value = validate_symmetric(value, "manifold point")
        w, u = np.linalg.eigh(sym(value))
        if w[0] <= 0.0 or w[0] <= PD_RTOL * w[-1]:
            raise DomainError(
                f"manifold point is not positive definite (lambda_min={w[0]:.3e})"
            )
        self.value = sym(value)
        self.dim = value.shape[0]
        self._eigvals = w
        self._eigvecs = u
        self._lock = threading.Lock()
        self._cache = {}

    def _derived(self, key, exponent):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = _rebuild(self._eigvecs, self._eigvals ** exponent)
            return self._cache[key]

    @property
    def inv(self):
        return self._derived("inv", -1.0)

    @property
    def sqrt(self):
        return self._derived("sqrt", 0.5)

    @property
    def invsqrt(self):
        return self._derived("invsqrt", -0.5)

    @property
    def eigenvalues(self):
        return self._eigvals

    def __repr__(self):
        return f"ManifoldPoint(dim={self.dim})"


def as_point(x):
    """Coerce an ndarray (or pass through a :class:`ManifoldPoint`)."""
    return x if isinstance(x, ManifoldPoint) else ManifoldPoint(x)


def inner(x, eta, xi):
    """Intrinsic inner product ``trace(eta X^-1 xi X^-1)`` at ``x``.

    Symmetric, bilinear and positive definite on symmetric matrices.
    """
    x = as_point(x)
    eta = np.asarray(eta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    check_same_dim(eta, xi)
    a = x.inv @ eta
    b = x.inv @ xi
    return float(np.tensordot(a, b.T))


def norm(x, eta):
    """Intrinsic norm ``sqrt(inner(x, eta, eta))``."""
    x = as_point(x)
    a = x.inv @ np.asarray(eta, dtype=float)
    return float(np.sqrt(max(np.tensordot(a, a.T), 0.0)))


def egrad_to_rgrad(x, g_euc):
    """Convert a symmetrized Euclidean gradient to the intrinsic gradient.

    The gradient in the intrinsic metric is ``X g X``, which satisfies the
    duality ``inner(X, rgrad, xi) = trace(g xi)`` for every tangent ``xi``.
    """
    x = as_point(x)
    g_euc = np.asarray(g_euc, dtype=float)
    return sym(x.value @ g_euc @ x.value)


def retract(x, xi):
    """Exponential-map retraction ``X exp(X^-1 xi)``.

    Moves from ``x`` along the geodesic with initial velocity ``xi``; the
    result is symmetrized and positive definite.
    """
    x = as_point(x)
    xi = np.asarray(xi, dtype=float)
    w = np.linalg.solve(x.value, xi)
    if np.linalg.norm(w) >= _EXP_OVERFLOW:
        raise StepTooLarge(f"retraction step norm {np.linalg.norm(w):.3e} would overflow")
    r = sym(x.value @ scipy.linalg.expm(w))
    if not np.all(np.isfinite(r)):
        raise StepTooLarge("retraction overflowed")
    return r


class TransportOperator:
    """Parallel transport ``eta -> E eta E^T`` between two points.

    ``E = (Y X^-1)^(1/2)`` realized through symmetric kernels as
    ``Y^(1/2) (Y^(1/2) X^-1 Y^(1/2))^(1/2) Y^(-1/2)``; the inverse factor is
    kept alongside so the reverse transport costs one congruence.
    """

    __slots__ = ("e", "e_inv")

    def __init__(self, e, e_inv):
        self.e = e
        self.e_inv = e_inv

    @classmethod
    def between(cls, x, y):
        x = as_point(x)
        y = as_point(y)
        mid = sym(y.sqrt @ x.inv @ y.sqrt)
        w, u = np.linalg.eigh(mid)
        w = np.clip(w, PD_RTOL * max(w[-1], 1.0), None)
        root = _rebuild(u, np.sqrt(w))
        inv_root = _rebuild(u, 1.0 / np.sqrt(w))
        e = y.sqrt @ root @ y.invsqrt
        e_inv = y.sqrt @ inv_root @ y.invsqrt
        return cls(e, e_inv)

    @classmethod
    def identity(cls, dim):
        eye = np.eye(dim)
        return cls(eye, eye)

    def apply(self, eta):
        return sym(self.e @ eta @ self.e.T)

    def apply_inv(self, eta):
        return sym(self.e_inv @ eta @ self.e_inv.T)

    def compose_after(self, other):
        """Transport equal to ``self`` applied after ``other``."""
        return TransportOperator(self.e @ other.e, other.e_inv @ self.e_inv)


def transport(x, y, eta):
    """Parallel transport of the tangent vector ``eta`` from ``x`` to ``y``."""
    return TransportOperator.between(x, y).apply(np.asarray(eta, dtype=float))


def transport_inv(x, y, eta):
    """Inverse of :func:`transport`: carries a tangent vector at ``y`` back to ``x``."""
    return TransportOperator.between(x, y).apply_inv(np.asarray(eta, dtype=float))


def _rel_log_eigs(a, b):
    """Eigenvalues of ``B^(-1/2) A B^(-1/2)`` in log scale."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_same_dim(a, b)
    try:
        w = scipy.linalg.eigvalsh(sym(a), sym(b))
    except scipy.linalg.LinAlgError as exc:
        raise DomainError(f"distance requires positive definite inputs: {exc}") from exc
    if w[0] <= 0.0:
        raise DomainError("distance requires positive definite inputs")
    return np.log(w)

def dist_riem(a, b):
    """Riemannian distance ``||log(A^(-1/2) B A^(-1/2))||_F``."""
    return float(np.linalg.norm(_rel_log_eigs(a, b)))


def dist_thompson(a, b):
    """Thompson part metric ``||log(B^(-1/2) A B^(-1/2))||`` (operator norm).

    Evaluated through the order-unit form ``max(log W(A/B), log W(B/A))``
    with ``W(A/B)`` the largest generalized eigenvalue of the pencil
    ``(A, B)``. Top eigenvalues carry full relative accuracy, which the
    log of a tiny bottom eigenvalue would not.
    """
    return float(max(_rel_log_eigs(a, b)[-1], _rel_log_eigs(b, a)[-1], 0.0))


def s_div(x, y):
    """Symmetric log-det divergence ``logdet((X+Y)/2) - logdet(X)/2 - logdet(Y)/2``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    check_same_dim(x, y)
    sign, mid = np.linalg.slogdet((x + y) / 2.0)
    if sign <= 0:
        raise DomainError("s_div requires positive definite inputs")
    return float(mid - 0.5 * np.linalg.slogdet(x)[1] - 0.5 * np.linalg.slogdet(y)[1])
