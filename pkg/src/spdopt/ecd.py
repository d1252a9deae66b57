"""Elliptically contoured distributions and scatter-matrix estimation.

A density-generator catalog (Kotz family, multivariate t, power
exponential, W, elliptical gamma, Pearson II, logistic), the negative
log-likelihood of the scatter matrix and its gradient, the fixed-point and
convex-concave updates, class-based solver dispatch, an existence
diagnostic and a seeded sampler. Normalizing constants of the generators
are dropped throughout, so likelihood values are meaningful up to an
additive constant; differences and gradients are exact.
"""

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import fixedpoint, optim
from .errors import (
    ClassViolation,
    DomainError,
    ExistenceWarning,
    IncompatibleMethod,
    InvalidInput,
    NonFiniteCost,
    RankError,
    UnsupportedVariant,
)
from .linalg import sqrtm, sym, validate_spd

FIXED_POINT = "fixed_point"
CCCP = "cccp"
MANIFOLD = "manifold"

FIT_METHODS = ("auto", "fp", "fp2", "cccp", "sd", "cg", "lbfgs")


# ---------------------------------------------------------------------------
# Density generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dgf:
    """Radial density generator, exposed through ``-log phi`` and ``h = -phi'/phi``."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidInput("dim must be at least 1")

    def neg_log_phi(self, t):
        raise NotImplementedError

    def h(self, t):
        raise NotImplementedError

    @property
    def name(self):
        return type(self).__name__.lower()

    def params(self):
        out = {k: v for k, v in self.__dict__.items()}
        return out


@dataclass(frozen=True)
class Kotz(Dgf):
    """Kotz-type generator ``phi(t) = t^(alpha - d/2) exp(-(t/b)^beta)``."""

    alpha: float = 1.0
    b: float = 2.0
    beta: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.alpha <= 0 or self.b <= 0 or self.beta <= 0:
            raise InvalidInput("Kotz parameters alpha, b, beta must be positive")

    def neg_log_phi(self, t):
        t = np.asarray(t, dtype=float)
        c = self.dim / 2.0 - self.alpha
        out = (t / self.b) ** self.beta
        if c != 0.0:
            out = out + c * np.log(t)
        return out

    def h(self, t):
        t = np.asarray(t, dtype=float)
        c = self.dim / 2.0 - self.alpha
        out = (self.beta / self.b**self.beta) * t ** (self.beta - 1.0)
        if c != 0.0:
            out = out + c / t
        return out


@dataclass(frozen=True)
class StudentT(Dgf):
    """Multivariate t generator ``phi(t) = (1 + t/nu)^(-(nu+d)/2)``."""

    nu: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.nu <= 0:
            raise InvalidInput("StudentT requires nu > 0")

    def neg_log_phi(self, t):
        return 0.5 * (self.nu + self.dim) * np.log1p(np.asarray(t, dtype=float) / self.nu)

    def h(self, t):
        return (self.nu + self.dim) / (2.0 * (self.nu + np.asarray(t, dtype=float)))


@dataclass(frozen=True)
class PowerExponential(Dgf):
    """Power exponential generator ``phi(t) = exp(-t^nu / b)``."""

    nu: float = 1.0
    b: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        if self.nu <= 0 or self.b <= 0:
            raise InvalidInput("PowerExponential requires nu > 0 and b > 0")

    def neg_log_phi(self, t):
        return np.asarray(t, dtype=float) ** self.nu / self.b

    def h(self, t):
        return (self.nu / self.b) * np.asarray(t, dtype=float) ** (self.nu - 1.0)


@dataclass(frozen=True)
class WDist(Dgf):
    """W-distribution generator ``phi(t) = t^(nu-1) exp(-t^nu / b)``."""

    nu: float = 0.5
    b: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        if self.nu <= 0 or self.b <= 0:
            raise InvalidInput("WDist requires nu > 0 and b > 0")
        if self.dim / 2.0 + self.nu - 1.0 <= 0:
            raise InvalidInput("WDist requires d/2 + nu - 1 > 0 for an integrable radial law")

    def neg_log_phi(self, t):
        t = np.asarray(t, dtype=float)
        return (1.0 - self.nu) * np.log(t) + t**self.nu / self.b

    def h(self, t):
        t = np.asarray(t, dtype=float)
        return (1.0 - self.nu) / t + (self.nu / self.b) * t ** (self.nu - 1.0)


@dataclass(frozen=True)
class EllipticalGamma(Dgf):
    """Elliptical gamma generator ``phi(t) = t^(nu - d/2) exp(-t/b)``."""

    nu: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.nu <= 0 or self.b <= 0:
            raise InvalidInput("EllipticalGamma requires nu > 0 and b > 0")

    def neg_log_phi(self, t):
        t = np.asarray(t, dtype=float)
        c = self.dim / 2.0 - self.nu
        out = t / self.b
        if c != 0.0:
            out = out + c * np.log(t)
        return out

    def h(self, t):
        t = np.asarray(t, dtype=float)
        c = self.dim / 2.0 - self.nu
        out = np.full_like(t, 1.0 / self.b)
        if c != 0.0:
            out = out + c / t
        return out


@dataclass(frozen=True)
class PearsonII(Dgf):
    """Pearson type II generator ``phi(t) = (1 - t)^nu`` on ``0 <= t < 1``."""

    nu: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if self.nu <= -1:
            raise InvalidInput("PearsonII requires nu > -1")

    def _check_domain(self, t):
        if np.any(t >= 1.0):
            raise DomainError("Pearson II support requires x' S^-1 x < 1 for all samples")
        return t

    def neg_log_phi(self, t):
        t = self._check_domain(np.asarray(t, dtype=float))
        return -self.nu * np.log1p(-t)

    def h(self, t):
        t = self._check_domain(np.asarray(t, dtype=float))
        return self.nu / (1.0 - t)


@dataclass(frozen=True)
class Logistic(Dgf):
    """Elliptical logistic generator ``phi(t) = exp(-sqrt(t)) / (1 + exp(-sqrt(t)))^2``."""

    def neg_log_phi(self, t):
        u = np.sqrt(np.asarray(t, dtype=float))
        return u + 2.0 * np.log1p(np.exp(-u))

    def h(self, t):
        t = np.asarray(t, dtype=float)
        u = np.sqrt(t)
        small = u < 1e-8
        safe_u = np.where(small, 1.0, u)
        return np.where(small, 0.25, np.tanh(safe_u / 2.0) / (2.0 * safe_u))


def gaussian(dim):
    """The Gaussian generator as the Kotz instance ``alpha=d/2, beta=1, b=2``."""
    return Kotz(dim, alpha=dim / 2.0, b=2.0, beta=1.0)


def as_kotz(dgf):
    """Kotz parameters equivalent to ``dgf``, or None if outside the family."""
    if isinstance(dgf, Kotz):
        return dgf
    if isinstance(dgf, PowerExponential):
        return Kotz(dgf.dim, alpha=dgf.dim / 2.0, b=dgf.b ** (1.0 / dgf.nu), beta=dgf.nu)
    if isinstance(dgf, WDist):
        return Kotz(dgf.dim, alpha=dgf.dim / 2.0 + dgf.nu - 1.0, b=dgf.b ** (1.0 / dgf.nu), beta=dgf.nu)
    if isinstance(dgf, EllipticalGamma):
        return Kotz(dgf.dim, alpha=dgf.nu, b=dgf.b, beta=1.0)
    return None


DGF_VARIANTS = {
    "kotz": Kotz,
    "gaussian": None,  # resolved through gaussian()
    "student_t": StudentT,
    "power_exponential": PowerExponential,
    "w_dist": WDist,
    "elliptical_gamma": EllipticalGamma,
    "pearson2": PearsonII,
    "logistic": Logistic,
}


def dgf_from_params(name, dim, **params):
    """Instantiate a generator by registry name."""
    key = name.lower()
    if key == "gaussian":
        return gaussian(dim)
    if key not in DGF_VARIANTS:
        raise InvalidInput(f"unknown dgf {name!r}; known: {sorted(DGF_VARIANTS)}")
    return DGF_VARIANTS[key](dim, **params)


def dgf_to_dict(dgf):
    out = {"name": dgf.name}
    out.update({k: float(v) if isinstance(v, float) else v for k, v in dgf.params().items()})
    return out


# ---------------------------------------------------------------------------
# Datasets
# ---------------------------------------------------------------------------

class Dataset:
    """An ``n x d`` sample matrix with optional sampling provenance.

    Rows are validated to be finite and nonzero (a zero row makes the
    Mahalanobis weight ``h(t)`` blow up for heavy-tailed generators).
    """

    __slots__ = ("rows", "provenance", "_rank")

    def __init__(self, rows, provenance=None):
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2:
            raise InvalidInput(f"dataset must be a 2-d array, got shape {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise InvalidInput("dataset has non-finite entries")
        if rows.shape[0] > 0 and np.any(np.linalg.norm(rows, axis=1) == 0.0):
            raise InvalidInput("dataset contains an all-zero row")
        rows = rows.copy()
        rows.setflags(write=False)
        self.rows = rows
        self.provenance = provenance
        self._rank = None

    @property
    def n(self):
        return self.rows.shape[0]

    @property
    def d(self):
        return self.rows.shape[1]

    def rank(self):
        if self._rank is None:
            self._rank = int(np.linalg.matrix_rank(self.rows)) if self.n else 0
        return self._rank

    def second_moment(self):
        """Sample second-moment matrix ``(1/n) sum x_i x_i^T``."""
        if self.n == 0:
            raise InvalidInput("empty dataset has no second moment")
        return sym(self.rows.T @ self.rows / self.n)

    def to_csv(self, path):
        with Path(path).open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([f"x{j}" for j in range(self.d)])
            for row in self.rows:
                writer.writerow([repr(float(v)) for v in row])

    @classmethod
    def from_csv(cls, path, dim=None):
        lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
        if lines and lines[0].lstrip().startswith("x"):
            header = lines[0].split(",")
            dim = len(header)
            lines = lines[1:]
        rows = [[float(v) for v in ln.split(",")] for ln in lines]
        if not rows:
            if dim is None:
                raise InvalidInput(f"cannot infer dimension of empty dataset {path}")
            return cls(np.empty((0, dim)))
        return cls(np.asarray(rows))

    def to_json_dict(self):
        out = {"n": self.n, "d": self.d, "rows": [[float(v) for v in row] for row in self.rows]}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json_dict(cls, payload):
        rows = np.asarray(payload["rows"], dtype=float).reshape(int(payload["n"]), int(payload["d"]))
        return cls(rows, provenance=payload.get("provenance"))


# ---------------------------------------------------------------------------
# Likelihood machinery
# ---------------------------------------------------------------------------

class EcdProblem:
    """Scatter-estimation problem for a generator and a dataset."""

    def __init__(self, dgf, data):
        if data.d != dgf.dim:
            raise InvalidInput(f"dgf dimension {dgf.dim} does not match data dimension {data.d}")
        self.dgf = dgf
        self.data = data

    @property
    def dim(self):
        return self.data.d

    @property
    def n(self):
        return self.data.n

    def mahalanobis(self, s):
        """Values ``t_i = x_i^T S^-1 x_i`` for a PD scatter ``s``."""
        s = np.asarray(s, dtype=float)
        try:
            np.linalg.cholesky(sym(s))
        except np.linalg.LinAlgError:
            raise DomainError("scatter matrix is not positive definite")
        x = self.data.rows
        v = np.linalg.solve(sym(s), x.T)
        return np.einsum("ji,ji->i", x.T, v)

    def nll(self, s):
        """Negative log-likelihood ``(n/2) logdet S + sum_i -log phi(t_i)``."""
        t = self.mahalanobis(s)
        _sign, logdet = np.linalg.slogdet(sym(np.asarray(s, dtype=float)))
        return float(0.5 * self.n * logdet + np.sum(self.dgf.neg_log_phi(t)))

    def nll_egrad(self, s):
        """Euclidean gradient ``(n/2) S^-1 - sum_i h(t_i) S^-1 x_i x_i^T S^-1``."""
        s = sym(np.asarray(s, dtype=float))
        t = self.mahalanobis(s)
        hvals = self.dgf.h(t)
        v = np.linalg.solve(s, self.data.rows.T).T
        g = 0.5 * self.n * np.linalg.inv(s) - v.T @ (hvals[:, None] * v)
        return sym(g)

    def rgrad_norm(self, s):
        """Intrinsic norm of the likelihood gradient at ``s``."""
        s = sym(np.asarray(s, dtype=float))
        gs = self.nll_egrad(s) @ s
        return float(math.sqrt(max(float(np.tensordot(gs, gs.T)), 0.0)))

    def _require_full_rank(self):
        if self.data.rank() < self.dim:
            raise RankError(
                f"data rank {self.data.rank()} is below the dimension {self.dim}"
            )

    def fp_map(self, s):
        """Likelihood fixed-point map ``(2/n) sum_i h(t_i) x_i x_i^T``."""
        self._require_full_rank()
        t = self.mahalanobis(s)
        hvals = self.dgf.h(t)
        x = self.data.rows
        return sym((2.0 / self.n) * (x.T @ (hvals[:, None] * x)))

    def cccp_step(self, p):
        """Convex-concave update on the precision ``P = S^-1``.

        Equals the inverse of :meth:`fp_map` evaluated at ``P^-1``; requires
        the nonnegative-weight class, so any negative ``h`` raises.
        """
        self._require_full_rank()
        p = sym(np.asarray(p, dtype=float))
        x = self.data.rows
        t = np.einsum("ij,jk,ik->i", x, p, x)
        hvals = self.dgf.h(t)
        if np.any(hvals < 0.0):
            raise ClassViolation("negative weight h(t) encountered in the CCCP update")
        m = sym((2.0 / self.n) * (x.T @ (hvals[:, None] * x)))
        return sym(np.linalg.inv(m))

    def to_problem(self):
        return optim.Problem(dim=self.dim, cost=self.nll, egrad=self.nll_egrad, name=f"nll_{self.dgf.name}")

    def to_fixed_point_map(self, check_h_sign=False):
        if check_h_sign:
            def apply(s):
                t = self.mahalanobis(s)
                hvals = self.dgf.h(t)
                if np.any(hvals < 0.0):
                    raise ClassViolation("negative weight h(t) encountered in the CCCP update")
                x = self.data.rows
                return sym((2.0 / self.n) * (x.T @ (hvals[:, None] * x)))
        else:
            apply = self.fp_map
        return fixedpoint.FixedPointMap(
            dim=self.dim,
            apply=apply,
            cost=self.nll,
            grad_norm=self.rgrad_norm,
            name=f"fp_{self.dgf.name}",
        )


# ---------------------------------------------------------------------------
# Class dispatch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DgfClass:
    gconvex: bool
    ln: bool
    lc: bool
    recommended_solver: str


def classify(dgf):
    """Solver-class flags of a generator.

    Kotz-representable generators follow the Kotz rules: strictly g-convex
    likelihood for ``alpha <= d/2``, log-nonexpansive fixed-point map for
    ``0 < beta < 2`` within that range, nonnegative-concave (CCCP) structure
    for ``beta >= 1``. The multivariate t and logistic generators have
    log-contractive weight functions and concave ``-log phi``; Pearson II
    is only g-convex.
    """
    half_d = dgf.dim / 2.0
    k = as_kotz(dgf)
    if k is not None:
        gc = k.alpha <= half_d
        ln = gc and 0.0 < k.beta < 2.0
        lc = gc and k.beta >= 1.0
    elif isinstance(dgf, StudentT):
        gc, ln, lc = True, True, True
    elif isinstance(dgf, Logistic):
        gc, ln, lc = True, True, True
    elif isinstance(dgf, PearsonII):
        gc, ln, lc = dgf.nu > 0, False, False
    else:
        raise InvalidInput(f"unknown dgf type {type(dgf).__name__}")
    if ln:
        rec = FIXED_POINT
    elif lc:
        rec = CCCP
    else:
        rec = MANIFOLD
    return DgfClass(gconvex=gc, ln=ln, lc=lc, recommended_solver=rec)


# ---------------------------------------------------------------------------
# Existence diagnostic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExistenceReport:
    ok: bool
    witness: Optional[str] = None
    ratio: float = 0.0
    bound: float = math.inf
    subspace_dim: int = 0
    basis: Optional[np.ndarray] = None


# Points with at most this relative distance from a subspace count as inside.
_SUBSPACE_TOL = 1e-8
# Exact subspace enumeration is attempted below this many distinct directions.
_ENUM_CAP = 300


def _distinct_directions(rows):
    u = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    # Canonical sign: first component of significant magnitude made positive.
    lead = np.argmax(np.abs(u) > 1e-12, axis=1)
    signs = np.sign(u[np.arange(len(u)), lead])
    u = u * signs[:, None]
    keys = np.round(u / _SUBSPACE_TOL).astype(np.int64)
    groups = {}
    for i, key in enumerate(map(tuple, keys)):
        groups.setdefault(key, []).append(i)
    dirs = np.array([u[idx[0]] for idx in groups.values()])
    counts = np.array([len(idx) for idx in groups.values()])
    return dirs, counts


def _count_in_span(rows, basis):
    q, _ = np.linalg.qr(basis)
    resid = rows - (rows @ q) @ q.T
    rel = np.linalg.norm(resid, axis=1) / np.linalg.norm(rows, axis=1)
    return int(np.sum(rel <= _SUBSPACE_TOL))


def existence_check(data, alpha):
    """Diagnose whether the Kotz likelihood can escape to infinity.

    For ``alpha < d/2`` the maximizer exists when every proper subspace
    ``L`` holds fewer than ``dim(L) / (d - 2 alpha)`` of the points, as a
    fraction. The check enumerates data-spanned subspaces exactly while the
    number of distinct directions is small, and otherwise falls back to a
    rank test plus an eigendirection concentration bound. Warnings never
    block fitting.
    """
    d, n = data.d, data.n
    if n == 0:
        return ExistenceReport(ok=False, witness="empty dataset", subspace_dim=0)
    if alpha >= d / 2.0 or d == 1:
        return ExistenceReport(ok=True)
    denom = d - 2.0 * alpha

    if data.rank() < d:
        return ExistenceReport(
            ok=False,
            witness=f"data span only a rank-{data.rank()} subspace of R^{d}",
            ratio=1.0,
            bound=float(data.rank()) / denom,
            subspace_dim=data.rank(),
        )

    worst = ExistenceReport(ok=True)
    rows = data.rows

    def consider(count, k, basis, label):
        nonlocal worst
        ratio = count / n
        bound = k / denom
        if ratio >= bound and (worst.ok or ratio - bound > worst.ratio - worst.bound):
            worst = ExistenceReport(
                ok=False,
                witness=f"{label} contains {count}/{n} points, ratio {ratio:.4f} >= {bound:.4f}",
                ratio=ratio,
                bound=bound,
                subspace_dim=k,
                basis=basis,
            )

    dirs, counts = _distinct_directions(rows)
    if d <= 3 and len(dirs) <= _ENUM_CAP:
        for u, c in zip(dirs, counts):
            consider(int(c), 1, u[:, None], f"line spanned by {np.round(u, 6)}")
        if d == 3:
            m = len(dirs)
            for i in range(m):
                for j in range(i + 1, m):
                    basis = np.stack([dirs[i], dirs[j]], axis=1)
                    if np.linalg.matrix_rank(basis) < 2:
                        continue
                    consider(_count_in_span(rows, basis), 2, basis, "plane spanned by two data directions")
    else:
        # Concentration heuristic: candidate subspaces come from the top-k
        # eigendirections of the direction covariance; each candidate is then
        # refined to the exact span of the points lying near it, so a heavy
        # cluster inside a proper subspace is counted exactly even when a few
        # outliers tilt the eigenvectors.
        u = rows / np.linalg.norm(rows, axis=1, keepdims=True)
        c_mat = u.T @ u / n
        _w, vecs = np.linalg.eigh(sym(c_mat))
        norms = np.linalg.norm(rows, axis=1)
        for k in range(1, d):
            coarse = vecs[:, d - k:]
            q, _ = np.linalg.qr(coarse)
            resid = np.linalg.norm(rows - (rows @ q) @ q.T, axis=1) / norms
            near = rows[resid <= 0.1]
            if len(near) < k:
                continue
            _u, _sv, vt = np.linalg.svd(near, full_matrices=False)
            basis = vt[:k].T
            consider(_count_in_span(rows, basis), k, basis, f"refined top-{k} eigendirection subspace")
        heaviest = int(np.argmax(counts))
        consider(
            int(counts[heaviest]), 1, dirs[heaviest][:, None],
            f"line spanned by {np.round(dirs[heaviest], 6)}",
        )
    return worst


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------

def _fp_to_solve_report(fp_report, method):
    if fp_report.status == fixedpoint.NON_FINITE:
        raise NonFiniteCost("fixed-point map produced a non-PD or non-finite iterate")
    rows = [(it, cost, gnorm, t, step) for it, step, _m, t, cost, gnorm in fp_report.trace]
    return optim.SolveReport(
        minimizer=fp_report.fixed_point,
        trace=rows,
        status=fp_report.status,
        niter=fp_report.niter,
        method=method,
    )


def mle_fit(dgf, data, method="auto", *, grad_tol=1e-6, step_tol=1e-8,
            max_iter=None, initial=None, warn_existence=True):
    """Maximum-likelihood scatter estimate with class-based dispatch.

    ``method`` is one of ``auto, fp, fp2, cccp, sd, cg, lbfgs``; ``auto``
    follows the recommendation of :func:`classify`. Fixed-point methods
    require the log-nonexpansive or CCCP class; manifold methods apply to
    every generator. Returns an :class:`spdopt.optim.SolveReport` whose
    trace rows carry the Thompson step in a fifth column for the
    fixed-point methods.
    """
    if method not in FIT_METHODS:
        raise InvalidInput(f"unknown method {method!r}; expected one of {FIT_METHODS}")
    problem = EcdProblem(dgf, data)
    problem._require_full_rank()
    cls = classify(dgf)
    if method == "auto":
        method = {FIXED_POINT: "fp2", CCCP: "cccp", MANIFOLD: "lbfgs"}[cls.recommended_solver]

    if method in ("fp", "fp2") and not (cls.ln or cls.lc):
        raise IncompatibleMethod(
            f"{dgf.name} is not in the log-nonexpansive or CCCP class; use a manifold method"
        )
    if method == "cccp" and not cls.lc:
        raise IncompatibleMethod(f"{dgf.name} is not in the CCCP class")

    if warn_existence:
        k = as_kotz(dgf)
        if k is not None and k.alpha < dgf.dim / 2.0:
            report = existence_check(data, k.alpha)
            if not report.ok:
                warnings.warn(
                    f"existence condition violated: {report.witness}", ExistenceWarning
                )

    if method in ("sd", "cg", "lbfgs"):
        cfg = optim.SolverConfig(
            method=method,
            grad_tol=grad_tol,
            max_iter=max_iter or 1000,
            initial_point=initial,
        )
        return optim.solve(problem.to_problem(), cfg)

    fp_cfg = fixedpoint.FpConfig(
        step_tol=step_tol,
        max_iter=max_iter or 5000,
        scaling="trace_d" if method == "fp2" else "off",
        initial=initial,
    )
    g_map = problem.to_fixed_point_map(check_h_sign=(method == "cccp"))
    return _fp_to_solve_report(fixedpoint.picard_solve(g_map, fp_cfg), method)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample(dgf, scatter, n, seed):
    """Draw ``n`` samples from a Kotz-family distribution with scatter ``S``.

    Uses the stochastic representation ``x = r S^(1/2) u`` with ``u``
    uniform on the unit sphere and radial law ``r = sqrt(b) y^(1/(2 beta))``
    for ``y ~ Gamma(alpha/beta, 1)``, which reproduces the radial density
    ``r^(2 alpha - 1) exp(-(r^2/b)^beta)``.
    """
    k = as_kotz(dgf)
    if k is None:
        raise UnsupportedVariant(f"sampling is not implemented for {dgf.name}")
    scatter = validate_spd(np.asarray(scatter, dtype=float), "scatter")
    if scatter.shape[0] != dgf.dim:
        raise InvalidInput("scatter dimension does not match the generator")
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    rng = np.random.default_rng(seed)
    y = rng.gamma(k.alpha / k.beta, 1.0, size=n)
    r = math.sqrt(k.b) * y ** (1.0 / (2.0 * k.beta))
    z = rng.standard_normal((n, dgf.dim))
    if n:
        z = z / np.linalg.norm(z, axis=1, keepdims=True)
    rows = (r[:, None] * z) @ sqrtm(scatter)
    provenance = {
        "seed": int(seed) if np.isscalar(seed) else list(seed),
        "dgf": dgf_to_dict(dgf),
        "scatter": [float(v) for v in scatter.ravel()],
        "n": int(n),
    }
    return Dataset(rows, provenance=provenance)
