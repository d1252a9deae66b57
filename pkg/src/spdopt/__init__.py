"""Geometric optimization on the cone of symmetric positive definite matrices.

The package combines Riemannian line-search solvers (steepest descent,
conjugate gradient and limited-memory BFGS under the intrinsic metric),
Thompson-metric Picard iterations with trace scaling, maximum-likelihood
scatter estimation for elliptically contoured distributions, matrix
geometric means and medians, and a suite of numerical oracles for the
geodesic-convexity and contraction inequalities the solvers rely on.
"""

from . import ecd, fixedpoint, linalg, manifold, optim, oracles
from .ecd import (
    Dataset,
    Dgf,
    EcdProblem,
    EllipticalGamma,
    Kotz,
    Logistic,
    PearsonII,
    PowerExponential,
    StudentT,
    WDist,
    classify,
    existence_check,
    gaussian,
    mle_fit,
    sample,
)
from .errors import (
    ClassViolation,
    DomainError,
    ExistenceWarning,
    IncompatibleMethod,
    InvalidInput,
    LineSearchError,
    NonFiniteCost,
    NotDescent,
    RankError,
    SpdoptError,
    StepTooLarge,
    UnsupportedVariant,
)
from .fixedpoint import FixedPointMap, FpConfig, FpReport, estimate_contraction, picard_solve
from .linalg import (
    EigDecomp,
    eig_sym,
    expm,
    geodesic,
    geometric_mean,
    invsqrtm,
    loewner_leq,
    logm,
    parallel_sum,
    powm,
    random_spd,
    sqrtm,
)
from .manifold import (
    ManifoldPoint,
    dist_riem,
    dist_thompson,
    egrad_to_rgrad,
    inner,
    retract,
    s_div,
    transport,
    transport_inv,
)
from .optim import (
    Problem,
    SolveReport,
    SolverConfig,
    karcher_problem,
    median_problem,
    sdiv_problem,
    solve,
    wolfe_line_search,
)

__version__ = "0.1.0"
