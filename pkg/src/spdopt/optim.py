"""Line-search solvers on the SPD manifold.

Steepest descent, Fletcher-Reeves conjugate gradient and limited-memory
Riemannian BFGS over a cost/egrad problem interface, plus builders for the
classical built-in objectives: weighted Frechet (Karcher) mean, geometric
median and log-det divergence means.
"""

import csv
import math
import time
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInput, LineSearchError, NonFiniteCost, NotDescent
from .linalg import logm, sym, validate_spd
from .manifold import (
    ManifoldPoint,
    TransportOperator,
    as_point,
    dist_riem,
    egrad_to_rgrad,
    inner,
    norm,
    retract,
    s_div,
)

CONVERGED = "converged"
MAX_ITER = "max_iter"
LINE_SEARCH_FAIL = "line_search_fail"

METHODS = ("sd", "cg", "lbfgs")

# Bracketing evaluations allowed per Wolfe search.
_MAX_BRACKET = 50


@dataclass(frozen=True)
class Problem:
    """Cost and symmetrized Euclidean gradient of a function on SPD matrices."""

    dim: int
    cost: Callable[[np.ndarray], float]
    egrad: Callable[[np.ndarray], np.ndarray]
    name: str = ""


@dataclass
class SolverConfig:
    method: str = "lbfgs"
    max_iter: int = 1000
    grad_tol: float = 1e-6
    memory: int = 10
    c1: float = 1e-4
    c2: float = 0.9
    initial_point: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidInput(f"unknown method {self.method!r}, expected one of {METHODS}")
        if not 0.0 < self.c1 < self.c2 < 1.0:
            raise InvalidInput(f"Wolfe constants must satisfy 0 < c1 < c2 < 1, got {self.c1}, {self.c2}")
        if self.memory < 1:
            raise InvalidInput("memory must be at least 1")
        if self.max_iter < 1:
            raise InvalidInput("max_iter must be at least 1")


@dataclass
class SolveReport:
    """Result of a manifold solve: minimizer, per-iteration trace, status."""

    minimizer: np.ndarray
    trace: list
    status: str
    niter: int
    method: str

    @property
    def final_cost(self):
        return self.trace[-1][1]

    def write_trace_csv(self, path):
        with Path(path).open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["iter", "cost", "grad_norm", "time_s"])
            for row in self.trace:
                writer.writerow([row[0], repr(float(row[1])), repr(float(row[2])), repr(float(row[3]))])


@dataclass
class _Accepted:
    alpha: float
    point: ManifoldPoint
    cost: float
    rgrad: np.ndarray
    grad_norm: float
    transport: TransportOperator


def _try_retract_cost(problem, x, xi, alpha):
    """Cost at the trial point, or None when the step leaves the domain."""
    from .errors import DomainError, StepTooLarge

    try:
        y = retract(x, alpha * xi)
    except StepTooLarge:
        return None, None
    try:
        f = float(problem.cost(y))
    except DomainError:
        return None, None
    if not math.isfinite(f):
        return None, None
    return y, f


def _gradient_at(problem, x, y_mat, xi):
    """Gradient data at an Armijo-feasible trial point.

    Returns the new point, its intrinsic gradient and norm, the transport
    from ``x``, and the slope of the line-search section there.
    """
    from .errors import DomainError

    try:
        point = ManifoldPoint(y_mat)
    except DomainError:
        return None
    rgrad = egrad_to_rgrad(point, sym(problem.egrad(point.value)))
    if not np.all(np.isfinite(rgrad)):
        return None
    gnorm = norm(point, rgrad)
    trans = TransportOperator.between(x, point)
    dphi = inner(point, rgrad, trans.apply(xi))
    return point, rgrad, gnorm, trans, dphi


def _wolfe(problem, x, xi, f0, dphi0, cfg, trial):
    """Weak Wolfe search by bracketing bisection.

    Shrinks on an Armijo failure, expands on a curvature failure, and gives
    up after ``_MAX_BRACKET`` evaluations.
    """
    lo, hi = 0.0, math.inf
    t = trial
    for _ in range(_MAX_BRACKET):
        y_mat, f = _try_retract_cost(problem, x, xi, t)
        # The strict f < f0 guard keeps no-op steps out when the Armijo
        # threshold rounds to f0 at the resolution of the cost.
        if f is None or not (f <= f0 + cfg.c1 * t * dphi0 and f < f0):
            hi = t
            t = 0.5 * (lo + hi)
            continue
        data = _gradient_at(problem, x, y_mat, xi)
        if data is None:
            hi = t
            t = 0.5 * (lo + hi)
            continue
        point, rgrad, gnorm, trans, dphi = data
        if dphi < cfg.c2 * dphi0:
            lo = t
            t = 2.0 * t if math.isinf(hi) else 0.5 * (lo + hi)
            continue
        return _Accepted(t, point, f, rgrad, gnorm, trans)
    raise LineSearchError(f"no Wolfe step within {_MAX_BRACKET} bracketing evaluations")


def _armijo_backtrack(problem, x, xi, f0, dphi0, cfg, trial):
    """Sufficient-decrease fallback for when the curvature test is noise-bound.

    Near stationarity the slope is below the resolution of the cost, so the
    Wolfe bracket can exhaust itself; plain backtracking still certifies a
    decrease whenever one is measurable.
    """
    t = trial
    for _ in range(_MAX_BRACKET):
        y_mat, f = _try_retract_cost(problem, x, xi, t)
        if f is not None and f <= f0 + cfg.c1 * t * dphi0 and f < f0:
            data = _gradient_at(problem, x, y_mat, xi)
            if data is not None:
                point, rgrad, gnorm, trans, _dphi = data
                return _Accepted(t, point, f, rgrad, gnorm, trans)
        t *= 0.5
    raise LineSearchError(f"no Armijo step within {_MAX_BRACKET} backtracking evaluations")


def _search(problem, x, xi, f0, dphi0, cfg, trial):
    """Wolfe search with backtracking fallback; None when neither finds a step."""
    try:
        return _wolfe(problem, x, xi, f0, dphi0, cfg, trial)
    except LineSearchError:
        pass
    try:
        return _armijo_backtrack(problem, x, xi, f0, dphi0, cfg, trial)
    except LineSearchError:
        return None


def wolfe_line_search(problem, x, xi, config=None):
    """Step length satisfying the Armijo and curvature conditions.

    Both conditions are measured through retractions: the slope at a trial
    step is taken against the gradient there paired with the transported
    search direction. Raises :class:`NotDescent` if ``xi`` does not point
    downhill at ``x``.
    """
    cfg = config or SolverConfig()
    x = as_point(x)
    xi = np.asarray(xi, dtype=float)
    f0 = float(problem.cost(x.value))
    rgrad = egrad_to_rgrad(x, sym(problem.egrad(x.value)))
    dphi0 = inner(x, rgrad, xi)
    if dphi0 >= 0.0:
        raise NotDescent(f"directional derivative {dphi0:.3e} is not negative")
    return _wolfe(problem, x, xi, f0, dphi0, cfg, 1.0).alpha


class _LbfgsState:
    """Stored curvature pairs and the two-sided inverse-Hessian recursion.

    Each pair lives in the tangent space where it was created; the stored
    transport links it to the previous pair's space so the working vector
    can be carried through the recursion. Inner products against stored
    pairs are evaluated at the pair's own creation point.
    """

    def __init__(self, memory):
        self.pairs = deque(maxlen=memory)
        self.hdiag = None
        self._pending = None

    def direction(self, rgrad):
        return -self._hessmul(rgrad, len(self.pairs) - 1)

    def _hessmul(self, p, j):
        if j < 0:
            return self.hdiag * p
        point, s, y, rho, trans = self.pairs[j]
        c = rho * inner(point, s, p)
        p_red = p - c * y
        if j == 0:
            z = self.hdiag * p_red
        else:
            z = trans.apply(self._hessmul(trans.apply_inv(p_red), j - 1))
        return z - rho * inner(point, y, z) * s + c * s

    def update(self, point, step_transport, s, y):
        trans = step_transport if self._pending is None else step_transport.compose_after(self._pending)
        sy = inner(point, s, y)
        if sy <= 0.0:
            # Curvature lost on this step: keep the transport so the chain
            # between stored pairs stays connected.
            self._pending = trans
            return
        self.pairs.append((point, s, y, 1.0 / sy, trans))
        self.hdiag = sy / inner(point, y, y)
        self._pending = None


class _CgState:
    """Fletcher-Reeves direction with periodic restart."""

    def __init__(self, dim):
        self.restart_every = dim * (dim + 1) // 2
        self.prev_dir = None
        self.prev_gnorm2 = None
        self.count = 0

    def direction(self, rgrad, gnorm):
        if self.prev_dir is None or self.count >= self.restart_every:
            self.count = 0
            return -rgrad
        beta = gnorm**2 / self.prev_gnorm2
        return -rgrad + beta * self.prev_dir

    def update(self, step_transport, xi, gnorm):
        self.prev_dir = step_transport.apply(xi)
        self.prev_gnorm2 = gnorm**2
        self.count += 1

    def reset(self):
        self.prev_dir = None
        self.count = 0


def solve(problem, config=None):
    """Minimize a problem on the SPD manifold.

    Runs the configured method from ``config.initial_point`` (identity by
    default) until the intrinsic gradient norm drops below ``grad_tol``.
    Monotone cost decrease is guaranteed along Wolfe-accepted steps.
    """
    cfg = config or SolverConfig()
    if cfg.initial_point is None:
        x0 = np.eye(problem.dim)
    else:
        x0 = validate_spd(np.asarray(cfg.initial_point, dtype=float), "initial point")
    x = as_point(x0)

    t0 = time.perf_counter()
    f = float(problem.cost(x.value))
    if not math.isfinite(f):
        raise NonFiniteCost(f"cost at the initial point is {f}")
    rgrad = egrad_to_rgrad(x, sym(problem.egrad(x.value)))
    gnorm = norm(x, rgrad)
    trace = [(0, f, gnorm, time.perf_counter() - t0)]

    lbfgs = _LbfgsState(cfg.memory) if cfg.method == "lbfgs" else None
    cg = _CgState(problem.dim) if cfg.method == "cg" else None
    if lbfgs is not None:
        lbfgs.hdiag = 1.0 / gnorm if gnorm > 0 else 1.0

    status, niter = MAX_ITER, cfg.max_iter
    prev_alpha = None
    prev_dphi0 = None
    for k in range(1, cfg.max_iter + 1):
        if gnorm <= cfg.grad_tol:
            status, niter = CONVERGED, k - 1
            break

        if cfg.method == "sd":
            xi = -rgrad
        elif cfg.method == "cg":
            xi = cg.direction(rgrad, gnorm)
        else:
            xi = lbfgs.direction(rgrad)

        dphi0 = inner(x, rgrad, xi)
        is_sd_dir = cfg.method == "sd"
        if dphi0 >= 0.0:
            xi, dphi0, is_sd_dir = -rgrad, -(gnorm**2), True
            if cg is not None:
                cg.reset()

        if cfg.method == "lbfgs":
            trial = 1.0
        elif prev_alpha is None:
            trial = 1.0 / max(1.0, gnorm)
        elif cfg.method == "sd":
            trial = prev_alpha
        else:
            # Slope-ratio warm start: rescale the previous step so the
            # first-order cost decrease matches the one just accepted.
            trial = float(np.clip(prev_alpha * prev_dphi0 / dphi0, 1e-10, 1e10))

        acc = _search(problem, x, xi, f, dphi0, cfg, trial)
        if acc is None and not is_sd_dir:
            # Retry once along steepest descent before giving up.
            xi, dphi0 = -rgrad, -(gnorm**2)
            if cg is not None:
                cg.reset()
            if prev_alpha is None:
                trial = 1.0 / max(1.0, gnorm)
            else:
                trial = float(np.clip(prev_alpha * prev_dphi0 / dphi0, 1e-10, 1e10))
            acc = _search(problem, x, xi, f, dphi0, cfg, trial)
        if acc is None:
            status, niter = LINE_SEARCH_FAIL, k - 1
            break

        if lbfgs is not None:
            s = acc.transport.apply(acc.alpha * xi)
            y = acc.rgrad - acc.transport.apply(rgrad)
            lbfgs.update(acc.point, acc.transport, s, y)
        if cg is not None:
            cg.update(acc.transport, xi, gnorm)

        x, f, rgrad, gnorm = acc.point, acc.cost, acc.rgrad, acc.grad_norm
        prev_alpha, prev_dphi0 = acc.alpha, dphi0
        trace.append((k, f, gnorm, time.perf_counter() - t0))
    else:
        if gnorm <= cfg.grad_tol:
            status = CONVERGED

    return SolveReport(minimizer=x.value, trace=trace, status=status, niter=niter, method=cfg.method)


def _validate_weights_mats(weights, mats):
    if len(mats) == 0:
        raise InvalidInput("at least one matrix is required")
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(mats),):
        raise InvalidInput(f"{len(mats)} matrices but {w.shape} weights")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise InvalidInput("weights must be nonnegative and sum to one")
    mats = [validate_spd(np.asarray(a, dtype=float), f"matrix {i}") for i, a in enumerate(mats)]
    d = mats[0].shape[0]
    for a in mats:
        if a.shape[0] != d:
            raise InvalidInput("matrices must share a common dimension")
    return w, mats, d


def karcher_problem(weights, mats):
    """Weighted Frechet-mean objective ``sum_i w_i d_R(X, A_i)^2``."""
    w, mats, d = _validate_weights_mats(weights, mats)

    def cost(x):
        return float(sum(wi * dist_riem(x, ai) ** 2 for wi, ai in zip(w, mats)))

    def egrad(x):
        p = as_point(x)
        isq = p.invsqrt
        g = np.zeros((d, d))
        for wi, ai in zip(w, mats):
            li = logm(sym(isq @ ai @ isq))
            g -= 2.0 * wi * sym(isq @ li @ isq)
        return g

    return Problem(dim=d, cost=cost, egrad=egrad, name="karcher_mean")


def median_problem(weights, mats, eps=1e-9):
    """Weighted geometric-median objective with smoothing near the data.

    The distance is replaced by ``sqrt(d_R^2 + eps^2)`` so the gradient
    stays defined when the iterate lands on one of the ``A_i``.
    """
    w, mats, d = _validate_weights_mats(weights, mats)

    def cost(x):
        return float(
            sum(wi * math.sqrt(dist_riem(x, ai) ** 2 + eps**2) for wi, ai in zip(w, mats))
        )

    def egrad(x):
        p = as_point(x)
        isq = p.invsqrt
        g = np.zeros((d, d))
        for wi, ai in zip(w, mats):
            li = logm(sym(isq @ ai @ isq))
            di = math.sqrt(float(np.sum(li * li)) + eps**2)
            g -= wi * sym(isq @ li @ isq) / di
        return g

    return Problem(dim=d, cost=cost, egrad=egrad, name="geometric_median")


def sdiv_problem(weights, mats):
    """Weighted log-det divergence mean objective ``sum_i w_i S(X, A_i)``."""
    w, mats, d = _validate_weights_mats(weights, mats)

    def cost(x):
        return float(sum(wi * s_div(x, ai) for wi, ai in zip(w, mats)))

    def egrad(x):
        x = np.asarray(x, dtype=float)
        x_inv = np.linalg.inv(x)
        g = np.zeros((d, d))
        for wi, ai in zip(w, mats):
            g += 0.5 * wi * (np.linalg.inv((x + ai) / 2.0) - x_inv)
        return sym(g)

    return Problem(dim=d, cost=cost, egrad=egrad, name="sdiv_mean")
