import math

import numpy as np
import pytest
import scipy.integrate

from spdopt import ecd, fixedpoint as fp, optim
from spdopt.errors import (
    ClassViolation,
    DomainError,
    ExistenceWarning,
    IncompatibleMethod,
    InvalidInput,
    RankError,
    UnsupportedVariant,
)
from spdopt.linalg import geometric_mean, random_spd, sym
from spdopt.manifold import dist_thompson
from helpers import fd_egrad, rel_err

ALL_VARIANTS = [
    ecd.Kotz(4, alpha=1.0, b=2.0, beta=0.5),
    ecd.Kotz(4, alpha=2.0, b=1.5, beta=1.0),
    ecd.StudentT(4, nu=3.0),
    ecd.PowerExponential(4, nu=0.8, b=2.0),
    ecd.WDist(4, nu=0.6, b=2.0),
    ecd.EllipticalGamma(4, nu=1.5, b=1.0),
    ecd.PearsonII(4, nu=2.0),
    ecd.Logistic(4),
]


# ---------------------------------------------------------------------------
# Density generators
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("dgf", ALL_VARIANTS, ids=lambda d: d.name)
def test_h_matches_finite_differences_of_neg_log_phi(dgf):
    if isinstance(dgf, ecd.PearsonII):
        grid = np.linspace(0.05, 0.9, 30)
    else:
        grid = np.logspace(-3, 2, 40)
    h = dgf.h(grid)
    for t, ht in zip(grid, h):
        step = 1e-6 * t
        fd = (dgf.neg_log_phi(t + step) - dgf.neg_log_phi(t - step)) / (2 * step)
        assert abs(fd - ht) <= 1e-6 * max(1.0, abs(ht)), (dgf.name, t)


def test_kotz_h_closed_form_at_b():
    # h(t) = (d/2 - alpha)/t + (beta/b^beta) t^(beta-1); at t = b, beta = 1
    # this is (d/2 - alpha)/b + 1/b.
    d, alpha, b = 4, 1.0, 2.0
    dgf = ecd.Kotz(d, alpha=alpha, b=b, beta=1.0)
    assert math.isclose(float(dgf.h(b)), (d / 2 - alpha) / b + 1.0 / b, rel_tol=1e-12)


def test_gaussian_is_kotz_special_case():
    g = ecd.gaussian(3)
    assert isinstance(g, ecd.Kotz) and g.alpha == 1.5 and g.beta == 1.0 and g.b == 2.0
    t = np.array([0.3, 1.7])
    assert np.allclose(g.neg_log_phi(t), t / 2.0)
    assert np.allclose(g.h(t), 0.5)


def test_h_nonnegative_on_lc_variants():
    grid = np.logspace(-4, 3, 60)
    for dgf in ALL_VARIANTS:
        cls = ecd.classify(dgf)
        if cls.lc:
            assert np.all(dgf.h(grid) >= 0.0), dgf.name


def test_dgf_parameter_validation():
    with pytest.raises(InvalidInput):
        ecd.Kotz(3, alpha=-1.0, b=2.0, beta=1.0)
    with pytest.raises(InvalidInput):
        ecd.StudentT(3, nu=0.0)
    with pytest.raises(InvalidInput):
        ecd.PearsonII(3, nu=-1.5)


def test_pearson2_domain_error():
    with pytest.raises(DomainError):
        ecd.PearsonII(3, nu=1.0).neg_log_phi(np.array([0.5, 1.2]))


def test_dgf_registry_round_trip():
    dgf = ecd.dgf_from_params("kotz", 4, alpha=1.0, b=2.0, beta=0.5)
    assert dgf == ecd.Kotz(4, alpha=1.0, b=2.0, beta=0.5)
    assert ecd.dgf_from_params("gaussian", 5) == ecd.gaussian(5)
    with pytest.raises(InvalidInput):
        ecd.dgf_from_params("weibull", 3)


# ---------------------------------------------------------------------------
# Dataset
# ---------------------------------------------------------------------------

def test_dataset_rejects_zero_rows_and_nonfinite():
    with pytest.raises(InvalidInput):
        ecd.Dataset(np.array([[1.0, 2.0], [0.0, 0.0]]))
    with pytest.raises(InvalidInput):
        ecd.Dataset(np.array([[1.0, np.nan]]))


def test_dataset_csv_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    data = ecd.Dataset(rng.standard_normal((7, 3)))
    path = tmp_path / "d.csv"
    data.to_csv(path)
    loaded = ecd.Dataset.from_csv(path)
    assert np.array_equal(loaded.rows, data.rows)


def test_dataset_json_round_trip():
    rng = np.random.default_rng(1)
    data = ecd.Dataset(rng.standard_normal((5, 2)), provenance={"seed": 1})
    loaded = ecd.Dataset.from_json_dict(data.to_json_dict())
    assert np.array_equal(loaded.rows, data.rows)
    assert loaded.provenance == {"seed": 1}


def test_dataset_rank():
    rows = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
    assert ecd.Dataset(rows).rank() == 1


# ---------------------------------------------------------------------------
# Likelihood
# ---------------------------------------------------------------------------

def test_nll_gaussian_identity_scatter():
    rng = np.random.default_rng(2)
    rows = rng.standard_normal((20, 3))
    problem = ecd.EcdProblem(ecd.gaussian(3), ecd.Dataset(rows))
    expected = 0.5 * float(np.sum(rows**2))
    assert math.isclose(problem.nll(np.eye(3)), expected, rel_tol=1e-12)


def test_nll_kotz_single_point_hand_value():
    # Kotz(alpha=1, b=2, beta=1) in d=2 has alpha = d/2, so -log phi(t) = t/2;
    # with x = e1 and S = I the likelihood is 0 + 1/2.
    dgf = ecd.Kotz(2, alpha=1.0, b=2.0, beta=1.0)
    problem = ecd.EcdProblem(dgf, ecd.Dataset(np.array([[1.0, 0.0]])))
    assert math.isclose(problem.nll(np.eye(2)), 0.5, rel_tol=1e-14)


def test_nll_scaling_law_identity():
    rng = np.random.default_rng(3)
    dgf = ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.7)
    data = ecd.sample(dgf, random_spd(rng, 3), 50, seed=4)
    problem = ecd.EcdProblem(dgf, data)
    s = random_spd(rng, 3)
    c = 1.7
    direct = problem.nll(c * s) - problem.nll(s)
    t = problem.mahalanobis(s)
    termwise = 0.5 * data.n * 3 * math.log(c) + float(
        np.sum(dgf.neg_log_phi(t / c) - dgf.neg_log_phi(t))
    )
    assert abs(direct - termwise) <= 1e-10 * max(1.0, abs(direct))


def test_nll_rejects_non_pd():
    problem = ecd.EcdProblem(ecd.gaussian(2), ecd.Dataset(np.array([[1.0, 0.0]])))
    with pytest.raises(DomainError):
        problem.nll(np.diag([1.0, -1.0]))


def test_egrad_gaussian_stationary_at_second_moment():
    rng = np.random.default_rng(5)
    data = ecd.sample(ecd.gaussian(4), random_spd(rng, 4), 300, seed=6)
    problem = ecd.EcdProblem(ecd.gaussian(4), data)
    g = problem.nll_egrad(data.second_moment())
    assert np.linalg.norm(g) <= 1e-8 * data.n


def test_egrad_single_point_hand_value():
    # n=1, x=e1, Gaussian, S=I: (1/2) I - (1/2) e1 e1^T.
    problem = ecd.EcdProblem(ecd.gaussian(2), ecd.Dataset(np.array([[1.0, 0.0]])))
    g = problem.nll_egrad(np.eye(2))
    assert np.allclose(g, np.array([[0.0, 0.0], [0.0, 0.5]]))


@pytest.mark.parametrize(
    "dgf",
    [ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.6), ecd.StudentT(3, nu=2.5), ecd.Logistic(3)],
    ids=lambda d: d.name,
)
def test_egrad_matches_finite_differences(dgf):
    rng = np.random.default_rng(7)
    data = ecd.Dataset(rng.standard_normal((30, 3)))
    problem = ecd.EcdProblem(dgf, data)
    s = random_spd(rng, 3, cond_cap=50.0)
    assert rel_err(problem.nll_egrad(s), fd_egrad(problem.nll, s)) <= 1e-5


# ---------------------------------------------------------------------------
# Fixed-point map and CCCP
# ---------------------------------------------------------------------------

def test_fp_map_gaussian_is_second_moment_everywhere():
    rng = np.random.default_rng(8)
    data = ecd.sample(ecd.gaussian(3), random_spd(rng, 3), 100, seed=9)
    problem = ecd.EcdProblem(ecd.gaussian(3), data)
    m2 = data.second_moment()
    for _ in range(3):
        s = random_spd(rng, 3)
        assert rel_err(problem.fp_map(s), m2) <= 1e-12


def test_fp_map_two_unit_vectors():
    data = ecd.Dataset(np.array([[1.0, 0.0], [0.0, 1.0]]))
    problem = ecd.EcdProblem(ecd.gaussian(2), data)
    assert np.allclose(problem.fp_map(np.eye(2)), 0.5 * np.eye(2))


def test_fp_map_rank_deficient_raises():
    data = ecd.Dataset(np.array([[1.0, 2.0], [2.0, 4.0], [-1.0, -2.0]]))
    problem = ecd.EcdProblem(ecd.gaussian(2), data)
    with pytest.raises(RankError):
        problem.fp_map(np.eye(2))


def test_cccp_step_gaussian_one_step():
    rng = np.random.default_rng(10)
    data = ecd.sample(ecd.gaussian(3), random_spd(rng, 3), 200, seed=11)
    problem = ecd.EcdProblem(ecd.gaussian(3), data)
    p1 = problem.cccp_step(np.eye(3))
    assert rel_err(p1, np.linalg.inv(data.second_moment())) <= 1e-12


def test_cccp_step_is_inverse_of_fp_map():
    rng = np.random.default_rng(12)
    dgf = ecd.Kotz(3, alpha=1.2, b=2.0, beta=1.3)
    data = ecd.sample(dgf, random_spd(rng, 3), 500, seed=13)
    problem = ecd.EcdProblem(dgf, data)
    p = random_spd(rng, 3)
    lhs = problem.cccp_step(p)
    rhs = np.linalg.inv(problem.fp_map(np.linalg.inv(p)))
    assert rel_err(lhs, rhs) <= 1e-10


@pytest.mark.parametrize("beta", [1.0, 1.3, 1.7])
def test_cccp_monotone_descent_and_pd_iterates(beta):
    rng = np.random.default_rng(14)
    d = 4
    dgf = ecd.Kotz(d, alpha=1.0, b=2.0, beta=beta)
    data = ecd.sample(dgf, random_spd(rng, d), 1500, seed=15)
    problem = ecd.EcdProblem(dgf, data)
    p = np.eye(d)
    costs = [problem.nll(np.linalg.inv(p))]
    for _ in range(50):
        p = problem.cccp_step(p)
        assert np.all(np.linalg.eigvalsh(p) > 0)
        costs.append(problem.nll(np.linalg.inv(p)))
    diffs = np.diff(costs)
    assert np.max(diffs) <= 1e-10 * max(1.0, abs(costs[0]))


def test_cccp_step_negative_weight_raises():
    # alpha > d/2 makes h negative for small Mahalanobis values.
    dgf = ecd.Kotz(2, alpha=3.0, b=2.0, beta=1.0)
    data = ecd.Dataset(np.array([[0.1, 0.0], [0.0, 0.1], [0.05, 0.05]]))
    problem = ecd.EcdProblem(dgf, data)
    with pytest.raises(ClassViolation):
        problem.cccp_step(np.eye(2))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def test_classify_kotz_ln_case():
    cls = ecd.classify(ecd.Kotz(4, alpha=1.0, b=2.0, beta=0.5))
    assert cls.gconvex and cls.ln and not cls.lc
    assert cls.recommended_solver == ecd.FIXED_POINT


def test_classify_gaussian_all_flags():
    cls = ecd.classify(ecd.gaussian(4))
    assert cls.gconvex and cls.ln and cls.lc


def test_classify_kotz_beta_three():
    cls = ecd.classify(ecd.Kotz(4, alpha=1.0, b=2.0, beta=3.0))
    assert cls.lc and not cls.ln and cls.gconvex
    assert cls.recommended_solver == ecd.CCCP


def test_classify_pearson2_manifold_only():
    cls = ecd.classify(ecd.PearsonII(4, nu=2.0))
    assert cls.gconvex and not cls.ln and not cls.lc
    assert cls.recommended_solver == ecd.MANIFOLD


def test_classify_every_variant_has_a_flag():
    for dgf in ALL_VARIANTS:
        cls = ecd.classify(dgf)
        assert cls.gconvex or cls.ln or cls.lc, dgf.name


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------

def test_mle_fit_gaussian_all_methods_recover_second_moment():
    rng = np.random.default_rng(16)
    d = 3
    data = ecd.sample(ecd.gaussian(d), random_spd(rng, d), 600, seed=17)
    m2 = data.second_moment()
    for method in ("fp", "fp2", "cccp", "sd", "cg", "lbfgs"):
        report = ecd.mle_fit(
            ecd.gaussian(d), data, method, grad_tol=1e-4 * data.n, step_tol=1e-9
        )
        assert dist_thompson(report.minimizer, m2) <= 1e-6, method


def test_mle_fit_cross_method_agreement():
    rng = np.random.default_rng(18)
    d = 4
    dgf = ecd.Kotz(d, alpha=1.0, b=2.0, beta=0.5)
    data = ecd.sample(dgf, random_spd(rng, d), 2000, seed=19)
    fit_fp2 = ecd.mle_fit(dgf, data, "fp2", step_tol=1e-9)
    fit_lbfgs = ecd.mle_fit(dgf, data, "lbfgs", grad_tol=1e-4 * data.n)
    assert dist_thompson(fit_fp2.minimizer, fit_lbfgs.minimizer) <= 1e-4


def test_mle_fit_auto_dispatch():
    rng = np.random.default_rng(20)
    dgf = ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.5)
    data = ecd.sample(dgf, random_spd(rng, 3), 800, seed=21)
    report = ecd.mle_fit(dgf, data, "auto")
    assert report.method == "fp2"
    pearson_like = ecd.PearsonII(3, nu=2.0)
    small = ecd.Dataset(0.05 * np.random.default_rng(1).standard_normal((200, 3)))
    report2 = ecd.mle_fit(pearson_like, small, "auto", grad_tol=1e-6 * 200)
    assert report2.method == "lbfgs"


def test_mle_fit_rank_deficient_raises():
    data = ecd.Dataset(np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]))
    with pytest.raises(RankError):
        ecd.mle_fit(ecd.gaussian(2), data, "fp")


def test_mle_fit_incompatible_method():
    rng = np.random.default_rng(22)
    data = ecd.Dataset(0.05 * rng.standard_normal((50, 3)))
    with pytest.raises(IncompatibleMethod):
        ecd.mle_fit(ecd.PearsonII(3, nu=2.0), data, "fp")
    kotz_ln_only = ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.5)
    data2 = ecd.sample(kotz_ln_only, np.eye(3), 100, seed=23)
    with pytest.raises(IncompatibleMethod):
        ecd.mle_fit(kotz_ln_only, data2, "cccp")


def test_mle_fit_equivariance():
    rng = np.random.default_rng(24)
    d = 3
    dgf = ecd.Kotz(d, alpha=1.0, b=2.0, beta=0.8)
    data = ecd.sample(dgf, random_spd(rng, d), 1000, seed=25)
    m = rng.standard_normal((d, d)) + 2 * np.eye(d)
    transformed = ecd.Dataset(data.rows @ m.T)
    fit_base = ecd.mle_fit(dgf, data, "fp", step_tol=1e-12)
    fit_trans = ecd.mle_fit(dgf, transformed, "fp", step_tol=1e-12)
    pushed = m @ fit_base.minimizer @ m.T
    assert dist_thompson(fit_trans.minimizer, pushed) <= 1e-6


def test_stationarity_equivalence():
    rng = np.random.default_rng(26)
    dgf = ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.5)
    data = ecd.sample(dgf, random_spd(rng, 3), 2000, seed=27)
    problem = ecd.EcdProblem(dgf, data)
    report = ecd.mle_fit(dgf, data, "fp", step_tol=1e-13)
    s = report.minimizer
    assert np.linalg.norm(problem.nll_egrad(s)) <= 1e-8 * data.n
    assert dist_thompson(problem.fp_map(s), s) <= 1e-6
    far = 3.0 * np.eye(3)
    assert np.linalg.norm(problem.nll_egrad(far)) > 1e-3
    assert dist_thompson(problem.fp_map(far), far) > 1e-3


def test_kotz_h_scalar_log_contractivity():
    # |log h(t) - log h(s)| < |log t - log s| for 0 < beta < 2, alpha <= d/2.
    rng = np.random.default_rng(28)
    for beta in (0.3, 0.9, 1.5):
        dgf = ecd.Kotz(4, alpha=1.0, b=2.0, beta=beta)
        for _ in range(200):
            t, s = np.exp(rng.uniform(-6, 6, size=2))
            if abs(math.log(t) - math.log(s)) < 1e-12:
                continue
            lhs = abs(math.log(float(dgf.h(t))) - math.log(float(dgf.h(s))))
            assert lhs < abs(math.log(t) - math.log(s)) + 1e-12


@pytest.mark.parametrize(
    "dgf",
    [
        ecd.Kotz(3, alpha=1.0, b=2.0, beta=0.5),
        ecd.Kotz(3, alpha=1.5, b=2.0, beta=1.0),
        ecd.StudentT(3, nu=2.0),
        ecd.Logistic(3),
    ],
    ids=lambda d: f"{d.name}",
)
def test_fp_map_log_nonexpansive_for_ln_variants(dgf):
    rng = np.random.default_rng(29)
    data = ecd.sample(ecd.gaussian(3), random_spd(rng, 3), 400, seed=30)
    problem = ecd.EcdProblem(dgf, data)
    est = fp.estimate_contraction(problem.to_fixed_point_map(), 20, rng_seed=31)
    assert est <= 1.0 + 1e-9


def test_strict_gconvexity_midpoint_all_corollary_variants():
    rng = np.random.default_rng(32)
    d = 3
    base_rows = rng.standard_normal((40, d))
    bounded_rows = 0.4 * base_rows / np.linalg.norm(base_rows, axis=1, keepdims=True)
    for dgf in [
        ecd.Kotz(d, alpha=1.0, b=2.0, beta=0.5),
        ecd.Kotz(d, alpha=1.5, b=2.0, beta=1.0),
        ecd.StudentT(d, nu=2.0),
        ecd.PowerExponential(d, nu=0.8, b=2.0),
        ecd.WDist(d, nu=0.6, b=2.0),
        ecd.EllipticalGamma(d, nu=1.2, b=1.0),
        ecd.PearsonII(d, nu=2.0),
        ecd.Logistic(d),
    ]:
        rows = bounded_rows if isinstance(dgf, ecd.PearsonII) else base_rows
        problem = ecd.EcdProblem(dgf, ecd.Dataset(rows))
        trial_rng = np.random.default_rng(33)
        for _ in range(1000):
            a = random_spd(trial_rng, d)
            b = random_spd(trial_rng, d)
            if isinstance(dgf, ecd.PearsonII):
                a = a + np.eye(d)
                b = b + np.eye(d)
            slack = (
                0.5 * problem.nll(a) + 0.5 * problem.nll(b) - problem.nll(geometric_mean(a, b))
            )
            assert slack >= -1e-9, dgf.name


# ---------------------------------------------------------------------------
# Existence diagnostics
# ---------------------------------------------------------------------------

def test_existence_generic_noisy_data_ok():
    rng = np.random.default_rng(34)
    data = ecd.Dataset(rng.standard_normal((500, 3)))
    assert ecd.existence_check(data, alpha=0.5).ok


def test_existence_vacuous_at_half_dimension():
    data = ecd.Dataset(np.array([[1.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
    assert ecd.existence_check(data, alpha=1.0).ok


def test_existence_collinear_line_warning():
    rng = np.random.default_rng(35)
    direction = np.array([1.0, 2.0])
    rows = np.concatenate(
        [np.outer(rng.uniform(0.5, 2.0, size=60), direction), rng.standard_normal((4, 2))]
    )
    report = ecd.existence_check(ecd.Dataset(rows), alpha=0.25)
    assert not report.ok
    assert report.subspace_dim == 1
    assert "line" in report.witness


def test_existence_rank_deficient_warns():
    rows = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
    report = ecd.existence_check(ecd.Dataset(rows), alpha=0.5)
    assert not report.ok
    assert "rank" in report.witness


def test_existence_heuristic_high_dimension():
    rng = np.random.default_rng(36)
    # Most mass inside a 2-dimensional slice of R^5.
    planar = np.zeros((300, 5))
    planar[:, :2] = rng.standard_normal((300, 2))
    noise = rng.standard_normal((20, 5))
    report = ecd.existence_check(ecd.Dataset(np.vstack([planar, noise])), alpha=1.0)
    assert not report.ok
    rng2 = np.random.default_rng(37)
    ok_report = ecd.existence_check(ecd.Dataset(rng2.standard_normal((300, 5))), alpha=1.0)
    assert ok_report.ok


def test_mle_fit_emits_existence_warning():
    rng = np.random.default_rng(38)
    direction = np.array([1.0, 0.5])
    rows = np.concatenate(
        [np.outer(rng.uniform(0.5, 2.0, size=80), direction), rng.standard_normal((3, 2))]
    )
    dgf = ecd.Kotz(2, alpha=0.25, b=2.0, beta=1.0)
    with pytest.warns(ExistenceWarning):
        ecd.mle_fit(dgf, ecd.Dataset(rows), "lbfgs", grad_tol=10.0, max_iter=5)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def test_sample_gaussian_identity_covariance():
    n = 20_000
    data = ecd.sample(ecd.gaussian(4), np.eye(4), n, seed=39)
    cov = data.second_moment()
    assert np.max(np.abs(cov - np.eye(4))) <= 3.0 / math.sqrt(n)


def test_sample_radial_moment_matches_quadrature():
    # E[t] for t = x' S^-1 x under the Kotz radial density r^(2a-1) e^(-(r^2/b)^beta),
    # computed with an independent 1-d quadrature oracle.
    alpha, b, beta, d = 1.3, 2.0, 0.7, 3
    dgf = ecd.Kotz(d, alpha=alpha, b=b, beta=beta)

    def weight(r):
        return r ** (2 * alpha - 1) * math.exp(-((r**2 / b) ** beta))

    num, _ = scipy.integrate.quad(lambda r: r**2 * weight(r), 0, np.inf)
    den, _ = scipy.integrate.quad(weight, 0, np.inf)
    expected = num / den
    # Cross-check the quadrature against the Gamma closed form.
    closed = b * math.gamma((alpha + 1) / beta) / math.gamma(alpha / beta)
    assert math.isclose(expected, closed, rel_tol=1e-9)

    rng = np.random.default_rng(40)
    scatter = random_spd(rng, d)
    data = ecd.sample(dgf, scatter, 100_000, seed=41)
    t = ecd.EcdProblem(dgf, data).mahalanobis(scatter)
    assert abs(np.mean(t) - expected) <= 0.01 * expected


def test_sample_empty_and_determinism(tmp_path):
    empty = ecd.sample(ecd.gaussian(3), np.eye(3), 0, seed=42)
    assert empty.n == 0
    path = tmp_path / "empty.csv"
    empty.to_csv(path)
    assert path.read_text() == "x0,x1,x2\n"
    d1 = ecd.sample(ecd.gaussian(3), np.eye(3), 50, seed=43)
    d2 = ecd.sample(ecd.gaussian(3), np.eye(3), 50, seed=43)
    assert np.array_equal(d1.rows, d2.rows)


def test_sample_unsupported_variant():
    with pytest.raises(UnsupportedVariant):
        ecd.sample(ecd.StudentT(3, nu=2.0), np.eye(3), 10, seed=44)


def test_sample_kotz_family_reductions_supported():
    for dgf in (
        ecd.PowerExponential(3, nu=0.8, b=2.0),
        ecd.WDist(3, nu=0.6, b=2.0),
        ecd.EllipticalGamma(3, nu=1.2, b=1.0),
    ):
        data = ecd.sample(dgf, np.eye(3), 20, seed=45)
        assert data.n == 20


def test_problem_dimension_mismatch():
    with pytest.raises(InvalidInput):
        ecd.EcdProblem(ecd.gaussian(3), ecd.Dataset(np.ones((4, 2))))
