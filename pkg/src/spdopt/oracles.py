"""Numerical verifiers for geodesic-convexity and contraction inequalities.

Each check runs seeded random trials of one inequality and reports the
trial count, the number of violations beyond tolerance, and the most
negative margin observed. Per-trial random streams derive from
``(seed, trial index)`` so trials are reproducible and order-independent.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .linalg import (
    geodesic,
    geometric_mean,
    powm,
    random_invertible,
    random_spd,
    sqrtm,
    sym,
)
from .manifold import dist_riem, dist_thompson, s_div

DEFAULT_TRIALS = 1000
# Tag mixed into the seed stream that generates a check's fixed auxiliary data.
_AUX_TAG = 999983
# Thompson-metric checks include exact equalities whose float error grows with
# the condition number; this cap keeps the 1e-9 tolerance meaningful.
_THOMPSON_COND_CAP = 1e4


@dataclass(frozen=True)
class CheckReport:
    name: str
    trials: int
    violations: int
    worst_slack: float

    @property
    def passed(self):
        return self.violations == 0


def _trial_rng(seed, trial):
    return np.random.default_rng([int(seed), int(trial)])


def _aux_rng(seed):
    return np.random.default_rng([int(seed), _AUX_TAG])


def _run_seeded(name, trials, seed, tol, trial_slack):
    violations = 0
    worst = math.inf
    for t in range(trials):
        slack = float(trial_slack(_trial_rng(seed, t)))
        worst = min(worst, slack)
        if slack < -tol:
            violations += 1
    return CheckReport(name=name, trials=trials, violations=violations, worst_slack=worst)


def _eigvals_desc(s):
    return np.linalg.eigvalsh(sym(s))[::-1]


def _midpoint_catalog(d, aux):
    """Catalog of g-convex cost functions keyed by id.

    Auxiliary matrices (congruence factors, offsets, reference points) are
    drawn once from the seed-derived ``aux`` stream so every trial tests
    the same function.
    """
    z = aux.standard_normal(d)
    k = max(1, d - 2)
    a1 = aux.standard_normal((d, k))
    a2 = aux.standard_normal((d, k))
    b_off = 0.5 * np.eye(k)
    c_ref = random_spd(aux, d)
    top = max(1, (d + 1) // 2)

    def logdet_psd(m):
        return float(np.linalg.slogdet(m)[1])

    return {
        "trace_exp": lambda s: float(np.sum(np.exp(_eigvals_desc(s)))),
        "trace_pow": lambda s: float(np.sum(_eigvals_desc(s) ** 2.5)),
        "lambda_max_exp": lambda s: float(np.exp(_eigvals_desc(s)[0])),
        "lambda_max_pow": lambda s: float(_eigvals_desc(s)[0] ** 2.5),
        "quad_inv": lambda s: float(z @ np.linalg.solve(s, z)),
        "logdet_quad": lambda s: logdet_psd(b_off + a1.T @ s @ a1 + a2.T @ s @ a2),
        "logdet_quad_inv": lambda s: logdet_psd(
            b_off + a1.T @ np.linalg.inv(s) @ a1 + a2.T @ np.linalg.inv(s) @ a2
        ),
        "trace_pow_quad": lambda s: float(
            np.sum(_eigvals_desc(b_off + a1.T @ s @ a1 + a2.T @ s @ a2) ** 2.0)
        ),
        "neg_logdet": lambda s: -logdet_psd(s),
        "sdiv": lambda s: s_div(s, c_ref),
        "kyfan_sq_log": lambda s: float(np.sum(np.log(_eigvals_desc(s)) ** 2)),
        "kyfan_abs_log": lambda s: float(
            np.sum(np.sort(np.abs(np.log(_eigvals_desc(s))))[::-1][:top])
        ),
        "dist_riem": lambda s: dist_riem(s, c_ref),
    }


# Functions that are g-linear: the midpoint value must match the average on
# both sides, so the margin is the negated absolute difference.
_GLINEAR_IDS = frozenset({"neg_logdet"})


def midpoint_gconvexity_check(fn_id, d, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check ``f(A # B) <= (f(A) + f(B)) / 2`` on random SPD pairs."""
    catalog = _midpoint_catalog(d, _aux_rng(seed))
    if fn_id not in catalog:
        raise InvalidInput(f"unknown function id {fn_id!r}; known: {sorted(catalog)}")
    fn = catalog[fn_id]
    glinear = fn_id in _GLINEAR_IDS

    def trial(rng):
        # Equality-type (g-linear) identities are checked at 1e-10, which a
        # near-cap condition number would swamp; inequality margins are wide
        # enough for the default cap.
        cap = 1e3 if glinear else 1e6
        a = random_spd(rng, d, cond_cap=cap)
        b = random_spd(rng, d, cond_cap=cap)
        mid = 0.5 * fn(a) + 0.5 * fn(b)
        val = fn(geometric_mean(a, b))
        return -abs(val - mid) if glinear else mid - val

    return _run_seeded(f"gconvex[{fn_id}]", trials, seed, tol, trial)


def _log_catalog(d, aux):
    k = max(1, d - 2)
    x_tall = aux.standard_normal((d, k))
    top = max(1, (d + 1) // 2)

    def log_trace_quad(s):
        return math.log(float(np.trace(x_tall.T @ s @ x_tall)))

    def log_prod_exp(s):
        return float(np.sum(_eigvals_desc(s)[:top]))

    def log_prod_sinh(s):
        return float(np.sum(np.log(np.sinh(_eigvals_desc(s)[:top]))))

    return {
        "trace_quad": log_trace_quad,
        "prod_exp": log_prod_exp,
        "prod_sinh": log_prod_sinh,
    }


def log_gconvexity_check(fn_id, d, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check ``f(A # B) <= sqrt(f(A) f(B))`` in log space on random pairs."""
    catalog = _log_catalog(d, _aux_rng(seed))
    if fn_id not in catalog:
        raise InvalidInput(f"unknown function id {fn_id!r}; known: {sorted(catalog)}")
    log_fn = catalog[fn_id]

    def trial(rng):
        a = random_spd(rng, d)
        b = random_spd(rng, d)
        return 0.5 * log_fn(a) + 0.5 * log_fn(b) - log_fn(geometric_mean(a, b))

    return _run_seeded(f"log_gconvex[{fn_id}]", trials, seed, tol, trial)


def log_majorization_check(d, t, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check the eigenvalue log-majorization chain along the geodesic.

    Verifies, in log space with relative tolerance, that the spectrum of
    ``A #_t B`` is log-majorized by that of ``A^(1-t) B^t``, which in turn
    is log-majorized by the sorted product ``lambda(A^(1-t)) lambda(B^t)``,
    with all three sharing one determinant.
    """
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"t={t} outside [0, 1]")

    def trial(rng):
        a = random_spd(rng, d)
        b = random_spd(rng, d)
        lam_a = _eigvals_desc(a)
        lam_b = _eigvals_desc(b)
        geo = np.log(_eigvals_desc(geodesic(a, b, t)))
        half = powm(a, (1.0 - t) / 2.0)
        mixed = np.log(_eigvals_desc(half @ powm(b, t) @ half))
        outer = (1.0 - t) * np.log(lam_a) + t * np.log(lam_b)
        c_geo, c_mix, c_out = np.cumsum(geo), np.cumsum(mixed), np.cumsum(outer)
        scale = max(1.0, float(np.max(np.abs(c_out))))
        slacks = np.concatenate([
            (c_mix - c_geo)[:-1],
            (c_out - c_mix)[:-1],
            [-abs(c_mix[-1] - c_geo[-1]), -abs(c_out[-1] - c_mix[-1])],
        ])
        return float(np.min(slacks)) / scale

    return _run_seeded(f"log_majorization[t={t}]", trials, seed, tol, trial)


def compression_check(d, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check that congruence by a tall full-rank factor contracts the Thompson metric."""

    def trial(rng):
        a = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        b = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        p = int(rng.integers(1, d + 1))
        while True:
            m = rng.standard_normal((d, p))
            sv = np.linalg.svd(m, compute_uv=False)
            if sv[-1] > 0 and sv[0] / sv[-1] <= 100.0:
                break
        return dist_thompson(a, b) - dist_thompson(sym(m.T @ a @ m), sym(m.T @ b @ m))

    return _run_seeded("compression", trials, seed, tol, trial)


def opmono_contraction_check(d, r=None, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check that a matrix power with exponent in (0, 1] contracts the Thompson metric."""
    if r is not None and not 0.0 < r <= 1.0:
        raise InvalidInput(f"r={r} outside (0, 1]")

    def trial(rng):
        a = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        b = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        rr = float(rng.uniform(0.05, 1.0)) if r is None else r
        return dist_thompson(a, b) - dist_thompson(powm(a, rr), powm(b, rr))

    return _run_seeded(f"opmono[r={'rand' if r is None else r}]", trials, seed, tol, trial)


def sum_log_contractive_check(d, trials=DEFAULT_TRIALS, seed=0):
    """Check that adding a contractive map to a nonexpansive one contracts strictly.

    Uses the identity map plus the matrix square root; the margin must be
    strictly positive on every trial.
    """

    def trial(rng):
        a = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        b = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        return dist_thompson(a, b) - dist_thompson(a + sqrtm(a), b + sqrtm(b))

    return _run_seeded("sum_log_contractive", trials, seed, 0.0, trial)


def kron_gm_identity_check(d1, d2, trials=DEFAULT_TRIALS, seed=0, tol=1e-10):
    """Check ``(A # B) x (C # D) = (A x C) # (B x D)`` to relative Frobenius error."""
    if d1 * d2 > 64:
        raise InvalidInput("Kronecker check dimension d1*d2 must stay at or below 64")

    def trial(rng):
        # The Kronecker product multiplies factor condition numbers and the
        # identity is tested entrywise at 1e-10, so the factors are kept
        # well conditioned.
        a = random_spd(rng, d1, cond_cap=30.0)
        b = random_spd(rng, d1, cond_cap=30.0)
        c = random_spd(rng, d2, cond_cap=30.0)
        e = random_spd(rng, d2, cond_cap=30.0)
        lhs = np.kron(geometric_mean(a, b), geometric_mean(c, e))
        rhs = geometric_mean(np.kron(a, c), np.kron(b, e))
        rel = float(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(rhs)))
        return -rel

    return _run_seeded(f"kron_gm[{d1}x{d2}]", trials, seed, tol, trial)


_THOMPSON_PROPS = ("inverse", "congruence", "power", "weighted_sum", "translation",
                   "compression", "opmono")


def thompson_property_check(prop, d, trials=DEFAULT_TRIALS, seed=0, tol=1e-9):
    """Check one core Thompson-metric property on random SPD inputs."""
    if prop == "compression":
        return compression_check(d, trials=trials, seed=seed, tol=tol)
    if prop == "opmono":
        return opmono_contraction_check(d, trials=trials, seed=seed, tol=tol)
    if prop not in _THOMPSON_PROPS:
        raise InvalidInput(f"unknown property {prop!r}; known: {_THOMPSON_PROPS}")

    def trial(rng):
        a = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        b = random_spd(rng, d, cond_cap=_THOMPSON_COND_CAP)
        base = dist_thompson(a, b)
        if prop == "inverse":
            return -abs(dist_thompson(np.linalg.inv(a), np.linalg.inv(b)) - base)
        if prop == "congruence":
            m = random_invertible(rng, d, max_cond=100.0)
            return -abs(dist_thompson(sym(m.T @ a @ m), sym(m.T @ b @ m)) - base)
        if prop == "power":
            t = float(rng.uniform(-1.0, 1.0))
            if abs(t) < 1e-3:
                t = math.copysign(1e-3, t if t != 0 else 1.0)
            return abs(t) * base - dist_thompson(powm(a, t), powm(b, t))
        if prop == "weighted_sum":
            pairs = [(a, b)] + [(random_spd(rng, d), random_spd(rng, d)) for _ in range(2)]
            w = rng.uniform(0.1, 1.0, size=3)
            sa = sum(wi * ai for wi, (ai, _) in zip(w, pairs))
            sb = sum(wi * bi for wi, (_, bi) in zip(w, pairs))
            return max(dist_thompson(ai, bi) for ai, bi in pairs) - dist_thompson(sa, sb)
        # translation
        c = random_spd(rng, d)
        alpha = max(float(_eigvals_desc(a)[0]), float(_eigvals_desc(b)[0]))
        beta = float(np.linalg.eigvalsh(c)[0])
        return alpha / (alpha + beta) * base - dist_thompson(a + c, b + c)

    return _run_seeded(f"thompson[{prop}]", trials, seed, tol, trial)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _gconvex_rows(seed, trials):
    rows = []
    for fn_id in sorted(_midpoint_catalog(5, _aux_rng(0))):
        tol = 1e-10 if fn_id in _GLINEAR_IDS else 1e-9
        rows.append(midpoint_gconvexity_check(fn_id, d=5, trials=trials, seed=seed, tol=tol))
    return rows


def _logconvex_rows(seed, trials):
    rows = [
        log_gconvexity_check(fn_id, d=5, trials=trials, seed=seed)
        for fn_id in sorted(_log_catalog(5, _aux_rng(0)))
    ]
    rows.append(_rename(
        log_gconvexity_check("trace_quad", d=1, trials=trials, seed=seed),
        "log_gconvex[trace_quad,d=1]",
    ))
    return rows


def _majorization_rows(seed, trials):
    return [log_majorization_check(4, t, trials=trials, seed=seed) for t in (0.25, 0.5, 0.75)]


def _kron_rows(seed, trials):
    return [
        kron_gm_identity_check(3, 2, trials=trials, seed=seed),
        kron_gm_identity_check(4, 4, trials=trials, seed=seed),
    ]


def _rename(report, name):
    return CheckReport(name=name, trials=report.trials, violations=report.violations,
                       worst_slack=report.worst_slack)


def _thompson_rows(seed, trials):
    rows = []
    for d in (2, 5, 8):
        for prop in _THOMPSON_PROPS:
            rows.append(_rename(
                thompson_property_check(prop, d, trials=trials, seed=seed),
                f"thompson[{prop},d={d}]",
            ))
        rows.append(_rename(
            sum_log_contractive_check(d, trials=trials, seed=seed),
            f"sum_log_contractive[d={d}]",
        ))
    return rows


SUITES = {
    "gconvex": _gconvex_rows,
    "logconvex": _logconvex_rows,
    "majorization": _majorization_rows,
    "kron": _kron_rows,
    "thompson": _thompson_rows,
}


def run_suite(suite, seed=1, trials=DEFAULT_TRIALS):
    """Run a named suite (or ``all``) and return its check reports."""
    if suite == "all":
        rows = []
        for name in sorted(SUITES):
            rows.extend(SUITES[name](seed, trials))
        return rows
    if suite not in SUITES:
        raise InvalidInput(f"unknown suite {suite!r}; known: {sorted(SUITES) + ['all']}")
    return SUITES[suite](seed, trials)
