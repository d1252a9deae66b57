"""Symmetric positive definite matrix kernels.

Eigendecomposition-backed matrix functions, geodesics, parallel sums and
order checks on the cone of real SPD matrices. Every kernel symmetrizes its
output, so round-off drift cannot accumulate across compositions.
"""

import json
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidInput

# Relative tolerance for accepting a matrix as symmetric.
SYM_RTOL = 1e-12
# An SPD matrix must satisfy lambda_min > PD_RTOL * lambda_max.
PD_RTOL = 1e-14


class EigDecomp(NamedTuple):
    """Eigendecomposition of a symmetric matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def sym(a):
    """Symmetric part ``(a + a.T) / 2``."""
    return (a + a.T) / 2.0


def is_symmetric(a, rtol=SYM_RTOL):
    """Whether ``a`` is square and symmetric within ``rtol`` relatively."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        return True
    return np.max(np.abs(a - a.T)) <= rtol * scale


def validate_symmetric(a, name="matrix"):
    """Return ``a`` as a float array, raising :class:`InvalidInput` if not symmetric."""
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} has non-finite entries")
    if not is_symmetric(a):
        raise InvalidInput(f"{name} is not symmetric within tolerance {SYM_RTOL}")
    return a


def validate_spd(a, name="matrix"):
    """Return ``a`` validated as symmetric positive definite.

    Rejects matrices whose smallest eigenvalue does not exceed
    ``PD_RTOL * lambda_max``, which guards the inversions performed
    downstream.
    """
    a = validate_symmetric(a, name)
    w = np.linalg.eigvalsh(sym(a))
    if w[-1] <= 0.0 or w[0] <= PD_RTOL * w[-1]:
        raise DomainError(
            f"{name} is not positive definite (eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}])"
        )
    return a


def check_same_dim(a, b):
    if a.shape != b.shape:
        raise InvalidInput(f"dimension mismatch: {a.shape} vs {b.shape}")


def eig_sym(s):
    """Eigendecomposition of a symmetric matrix.

    Parameters
    ----------
    s : ndarray, shape (d, d)
        Symmetric matrix.

    Returns
    -------
    EigDecomp
        Eigenvalues sorted in descending order with matching orthonormal
        eigenvectors as columns.
    """
    s = validate_symmetric(s)
    w, u = np.linalg.eigh(sym(s))
    return EigDecomp(w[::-1].copy(), u[:, ::-1].copy())


def _rebuild(u, w):
    return sym((u * w) @ u.T)


def _pd_eig(s, op):
    """Ascending eigenvalues and vectors of ``s``, requiring positive spectrum."""
    s = validate_symmetric(s)
    w, u = np.linalg.eigh(sym(s))
    if w[0] <= 0.0:
        raise DomainError(f"{op} requires a positive definite input (lambda_min={w[0]:.3e})")
    return w, u


def sqrtm(s):
    """Principal square root of an SPD matrix."""
    w, u = _pd_eig(s, "sqrt")
    return _rebuild(u, np.sqrt(w))


def invsqrtm(s):
    """Inverse principal square root of an SPD matrix."""
    w, u = _pd_eig(s, "invsqrt")
    return _rebuild(u, 1.0 / np.sqrt(w))


def logm(s):
    """Matrix logarithm of an SPD matrix; the result is symmetric."""
    w, u = _pd_eig(s, "log")
    return _rebuild(u, np.log(w))


def expm(s):
    """Matrix exponential of a symmetric matrix; the result is SPD."""
    s = validate_symmetric(s)
    w, u = np.linalg.eigh(sym(s))
    return _rebuild(u, np.exp(w))


def powm(s, p):
    """Real matrix power ``s**p`` of an SPD matrix."""
    w, u = _pd_eig(s, "pow")
    return _rebuild(u, w ** float(p))


def geodesic(a, b, t):
    """Point ``t`` along the geodesic joining SPD matrices ``a`` and ``b``.

    Evaluates ``a^(1/2) (a^(-1/2) b a^(-1/2))^t a^(1/2)``. The midpoint
    ``t = 1/2`` is the matrix geometric mean.

    Parameters
    ----------
    a, b : ndarray, shape (d, d)
        SPD endpoints.
    t : float in [0, 1]
        Position along the path; 0 gives ``a``, 1 gives ``b``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_same_dim(a, b)
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"t={t} outside [0, 1]")
    w, u = _pd_eig(a, "geodesic")
    a_sq = _rebuild(u, np.sqrt(w))
    a_isq = _rebuild(u, 1.0 / np.sqrt(w))
    inner = powm(sym(a_isq @ b @ a_isq), t)
    return sym(a_sq @ inner @ a_sq)


def geometric_mean(a, b):
    """Matrix geometric mean, the geodesic midpoint of ``a`` and ``b``."""
    return geodesic(a, b, 0.5)


def parallel_sum(a, b):
    """Parallel sum ``(a^-1 + b^-1)^-1`` of two SPD matrices."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_same_dim(a, b)
    return sym(np.linalg.inv(np.linalg.inv(a) + np.linalg.inv(b)))


def loewner_leq(a, b, tol=0.0):
    """Whether ``a <= b`` in the Loewner order, up to slack ``tol``.

    True iff the smallest eigenvalue of ``b - a`` is at least ``-tol``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_same_dim(a, b)
    return bool(np.linalg.eigvalsh(sym(b - a))[0] >= -tol)


def random_spd(rng, dim, cond_cap=1e6, jitter=1e-3):
    """Random SPD matrix ``M M^T + jitter I`` with capped condition number.

    Parameters
    ----------
    rng : numpy.random.Generator
    dim : int
    cond_cap : float
        Eigenvalues are floored at ``lambda_max / cond_cap`` so tolerances
        in downstream inequality checks stay meaningful.
    jitter : float
        Diagonal shift added to the Wishart-like factor.
    """
    m = rng.standard_normal((dim, dim))
    s = m @ m.T + jitter * np.eye(dim)
    w, u = np.linalg.eigh(sym(s))
    floor = w[-1] / cond_cap
    if w[0] < floor:
        w = np.clip(w, floor, None)
    return _rebuild(u, w)


def random_invertible(rng, dim, max_cond=1e3):
    """Random invertible matrix with condition number at most ``max_cond``."""
    while True:
        m = rng.standard_normal((dim, dim))
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] > 0 and sv[0] / sv[-1] <= max_cond:
            return m


def save_matrix(path, s):
    """Write a matrix as dense CSV (one row per line) or a JSON envelope.

    The format is chosen from the file suffix: ``.json`` produces
    ``{"dim": d, "data": [row-major]}``, anything else dense CSV.
    """
    path = Path(path)
    s = np.asarray(s, dtype=float)
    if path.suffix == ".json":
        payload = {"dim": s.shape[0], "data": [float(v) for v in s.ravel()]}
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = [",".join(repr(float(v)) for v in row) for row in s]
        path.write_text("\n".join(lines) + ("\n" if lines else ""))


def load_matrix(path):
    """Read a matrix written by :func:`save_matrix`, rejecting asymmetric input."""
    path = Path(path)
    if path.suffix == ".json":
        payload = json.loads(path.read_text())
        d = int(payload["dim"])
        data = np.asarray(payload["data"], dtype=float)
        if data.size != d * d:
            raise InvalidInput(f"JSON matrix file {path}: {data.size} entries for dim {d}")
        s = data.reshape(d, d)
    else:
        rows = [line for line in path.read_text().splitlines() if line.strip()]
        s = np.asarray([[float(v) for v in line.split(",")] for line in rows])
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise InvalidInput(f"CSV matrix file {path} is not square: {s.shape}")
    return validate_symmetric(s, name=str(path))
