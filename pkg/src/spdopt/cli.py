"""Command-line front door: sample, fit, bench, gmean, check.

Every run is seeded and reproducible: identical commands with identical
seeds write byte-identical data CSVs. Timing columns live only in trace
and summary files, never in data files.
"""

import argparse
import json
import math
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import ecd, linalg, oracles, optim
from .errors import (
    DomainError,
    ExistenceWarning,
    IncompatibleMethod,
    InvalidInput,
    RankError,
    SpdoptError,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NO_CONVERGENCE = 4

_COMMON_DEFAULTS = {"seed": 0, "out": "spdopt_out", "threads": None, "tol": None, "config": None}

DEFAULTS = {
    "sample": {
        **_COMMON_DEFAULTS,
        "dgf": "kotz", "alpha": 1.0, "beta": 1.0, "b": 2.0, "nu": 1.0,
        "dim": 4, "n": 1000, "scatter": None, "random_scatter": False,
    },
    "fit": {
        **_COMMON_DEFAULTS,
        "data": None, "dgf": "kotz", "alpha": 1.0, "beta": 1.0, "b": 2.0, "nu": 1.0,
        "method": "auto", "max_iter": None,
    },
    "bench": {
        **_COMMON_DEFAULTS,
        "dims": "4,16", "betas": "0.5", "alpha": None, "alpha_factor": None,
        "b": 2.0, "n": 10000, "methods": "fp,fp2,sd,cg,lbfgs", "max_iter": None,
    },
    "gmean": {
        **_COMMON_DEFAULTS,
        "matrices": [], "weights": None, "objective": "mean", "method": "lbfgs",
    },
    "check": {**_COMMON_DEFAULTS, "suite": "all", "trials": 1000},
}


@dataclass
class RunConfig:
    """Effective command configuration; round-trips through JSON."""

    command: str
    options: dict

    def to_json(self):
        return json.dumps({"command": self.command, "options": self.options}, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(command=payload["command"], options=dict(payload["options"]))


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="base random seed")
    common.add_argument("--out", help="output path or prefix")
    common.add_argument("--threads", type=int, help="worker threads for bench grids")
    common.add_argument("--tol", type=float, help="convergence tolerance override")
    common.add_argument("--config", help="JSON file with defaults mirroring the flags")

    parser = argparse.ArgumentParser(prog="spdopt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], argument_default=argparse.SUPPRESS,
                       help="draw a dataset from an elliptical distribution")
    p.add_argument("--dgf", choices=sorted(ecd.DGF_VARIANTS))
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--dim", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--scatter", help="matrix file with the true scatter")
    p.add_argument("--random-scatter", dest="random_scatter", action="store_true")

    p = sub.add_parser("fit", parents=[common], argument_default=argparse.SUPPRESS,
                       help="maximum-likelihood scatter fit")
    p.add_argument("--data", help="dataset CSV or JSON file")
    p.add_argument("--dgf", choices=sorted(ecd.DGF_VARIANTS))
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--method", choices=ecd.FIT_METHODS)
    p.add_argument("--max-iter", dest="max_iter", type=int)

    p = sub.add_parser("bench", parents=[common], argument_default=argparse.SUPPRESS,
                       help="run a dims x beta x methods benchmark grid")
    p.add_argument("--dims", help="comma-separated dimensions")
    p.add_argument("--betas", help="comma-separated Kotz beta values")
    p.add_argument("--alpha", type=float, help="fixed Kotz alpha")
    p.add_argument("--alpha-factor", dest="alpha_factor", type=float,
                   help="set alpha = factor * beta per cell")
    p.add_argument("--b", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--methods", help="comma-separated solver methods")
    p.add_argument("--max-iter", dest="max_iter", type=int)

    p = sub.add_parser("gmean", parents=[common], argument_default=argparse.SUPPRESS,
                       help="matrix geometric mean or median")
    p.add_argument("matrices", nargs="*", help="SPD matrix files")
    p.add_argument("--weights", help="comma-separated weights, default equal")
    p.add_argument("--objective", choices=("mean", "median"))
    p.add_argument("--method", choices=optim.METHODS)

    p = sub.add_parser("check", parents=[common], argument_default=argparse.SUPPRESS,
                       help="run the numerical oracle suites")
    p.add_argument("--suite", choices=sorted(oracles.SUITES) + ["all"])
    p.add_argument("--trials", type=int)

    return parser


def _effective_options(command, provided):
    """Merge hardcoded defaults, --config file values, and CLI flags."""
    merged = dict(DEFAULTS[command])
    config_path = provided.get("config")
    if config_path:
        cfg = RunConfig.from_json(Path(config_path).read_text())
        if cfg.command and cfg.command != command:
            raise InvalidInput(f"config is for command {cfg.command!r}, not {command!r}")
        for key, value in cfg.options.items():
            if key not in merged:
                raise InvalidInput(f"unknown config option {key!r} for {command}")
            merged[key] = value
    merged.update(provided)
    return merged


def _build_dgf(opts, dim):
    name = opts["dgf"]
    if name == "kotz":
        return ecd.Kotz(dim, alpha=opts["alpha"], b=opts["b"], beta=opts["beta"])
    if name == "gaussian":
        return ecd.gaussian(dim)
    if name in ("power_exponential", "w_dist", "elliptical_gamma"):
        return ecd.DGF_VARIANTS[name](dim, nu=opts["nu"], b=opts["b"])
    if name == "student_t":
        return ecd.StudentT(dim, nu=opts["nu"])
    if name == "pearson2":
        return ecd.PearsonII(dim, nu=opts["nu"])
    return ecd.Logistic(dim)


def _load_dataset(path):
    path = Path(path)
    if path.suffix == ".json":
        return ecd.Dataset.from_json_dict(json.loads(path.read_text()))
    return ecd.Dataset.from_csv(path)


def cmd_sample(opts):
    dim = int(opts["dim"])
    dgf = _build_dgf(opts, dim)
    if opts.get("scatter"):
        scatter = linalg.validate_spd(linalg.load_matrix(opts["scatter"]), "scatter")
    elif opts.get("random_scatter"):
        scatter = linalg.random_spd(np.random.default_rng([int(opts["seed"]), 101]), dim)
    else:
        scatter = np.eye(dim)
    data = ecd.sample(dgf, scatter, int(opts["n"]), int(opts["seed"]))
    out = Path(opts["out"])
    out.parent.mkdir(parents=True, exist_ok=True)
    data.to_csv(str(out) + ".csv")
    Path(str(out) + ".json").write_text(
        json.dumps(data.provenance, sort_keys=True, indent=2) + "\n"
    )
    print(f"wrote {out}.csv ({data.n} rows, dim {data.d})")
    return EXIT_OK


def _fit_tols(opts, n):
    # --tol drives the fixed-point step tolerance directly; manifold solvers
    # measure the gradient of an n-sample likelihood, so the same per-sample
    # tolerance is scaled by n.
    tol = opts.get("tol")
    step_tol = tol if tol else 1e-8
    grad_tol = tol * n if tol else 1e-6 * n
    return grad_tol, step_tol


def cmd_fit(opts):
    if not opts.get("data"):
        print("fit: --data is required", file=sys.stderr)
        return EXIT_USAGE
    data = _load_dataset(opts["data"])
    dgf = _build_dgf(opts, data.d)
    grad_tol, step_tol = _fit_tols(opts, max(1, data.n))

    existence = None
    kotz = ecd.as_kotz(dgf)
    if kotz is not None and kotz.alpha < data.d / 2.0:
        rep = ecd.existence_check(data, kotz.alpha)
        existence = {
            "ok": rep.ok, "witness": rep.witness, "ratio": rep.ratio,
            "bound": None if math.isinf(rep.bound) else rep.bound,
            "subspace_dim": rep.subspace_dim,
        }

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExistenceWarning)
            report = ecd.mle_fit(
                dgf, data, opts["method"],
                grad_tol=grad_tol, step_tol=step_tol, max_iter=opts.get("max_iter"),
            )
    except RankError as exc:
        print(f"fit: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (IncompatibleMethod, InvalidInput) as exc:
        print(f"fit: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = Path(opts["out"])
    out.parent.mkdir(parents=True, exist_ok=True)
    model = {
        "dgf": ecd.dgf_to_dict(dgf),
        "dim": data.d,
        "scatter": [float(v) for v in report.minimizer.ravel()],
        "diagnostics": {
            "method": report.method,
            "status": report.status,
            "iterations": report.niter,
            "final_cost": report.final_cost,
            "existence": existence,
        },
    }
    Path(str(out) + ".model.json").write_text(json.dumps(model, sort_keys=True, indent=2) + "\n")
    report.write_trace_csv(str(out) + ".trace.csv")
    print(f"fit: {report.method} {report.status} after {report.niter} iterations")
    return EXIT_OK if report.status == optim.CONVERGED else EXIT_NO_CONVERGENCE


def _parse_float_list(text):
    return [float(v) for v in str(text).split(",") if v != ""]


def _bench_cell(opts, dim, beta, out_dir):
    alpha = opts.get("alpha")
    factor = opts.get("alpha_factor")
    if alpha is None and factor is None:
        alpha = 1.0
    elif alpha is None:
        alpha = factor * beta
    seed = int(opts["seed"])
    tag = f"d{dim}_b{beta:g}"
    dgf = ecd.Kotz(dim, alpha=alpha, b=float(opts["b"]), beta=beta)
    cell_rng = np.random.default_rng([seed, dim, int(round(beta * 1000))])
    scatter = linalg.random_spd(cell_rng, dim)
    data = ecd.sample(dgf, scatter, int(opts["n"]), [seed, dim, int(round(beta * 1000)), 1])
    data.to_csv(out_dir / f"data_{tag}.csv")

    grad_tol, step_tol = _fit_tols(opts, max(1, data.n))
    rows = []
    for method in [m.strip() for m in str(opts["methods"]).split(",") if m.strip()]:
        t0 = time.perf_counter()
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ExistenceWarning)
                report = ecd.mle_fit(
                    dgf, data, method,
                    grad_tol=grad_tol, step_tol=step_tol, max_iter=opts.get("max_iter"),
                )
            elapsed = time.perf_counter() - t0
            report.write_trace_csv(out_dir / f"trace_{method}_{tag}.csv")
            rows.append((method, dim, beta, report.niter, elapsed, report.final_cost, report.status))
        except SpdoptError as exc:
            elapsed = time.perf_counter() - t0
            rows.append((method, dim, beta, -1, elapsed, math.nan, f"error:{type(exc).__name__}"))
    return rows


def cmd_bench(opts):
    dims = [int(v) for v in _parse_float_list(opts["dims"])]
    betas = _parse_float_list(opts["betas"])
    if not dims or not betas:
        print("bench: empty grid", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(opts["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = [(d, b) for d in dims for b in betas]
    workers = opts.get("threads") or None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda cell: _bench_cell(opts, cell[0], cell[1], out_dir), cells))

    rows = [row for cell_rows in results for row in cell_rows]
    rows.sort(key=lambda r: (r[1], r[2], r[0]))
    with (out_dir / "summary.csv").open("w", newline="") as fh:
        fh.write("method,dim,beta,iters,time_s,final_cost,status\n")
        for method, dim, beta, iters, elapsed, cost, status in rows:
            fh.write(f"{method},{dim},{beta!r},{iters},{elapsed!r},{cost!r},{status}\n")
    ok = [r for r in rows if not str(r[6]).startswith("error")]
    print(f"bench: {len(ok)}/{len(rows)} runs completed; summary at {out_dir / 'summary.csv'}")
    return EXIT_OK if ok else EXIT_NO_CONVERGENCE


def cmd_gmean(opts):
    paths = opts.get("matrices") or []
    if not paths:
        print("gmean: at least one matrix file is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        mats = [linalg.validate_spd(linalg.load_matrix(p), p) for p in paths]
    except (DomainError, InvalidInput) as exc:
        print(f"gmean: {exc}", file=sys.stderr)
        return EXIT_DATA
    if opts.get("weights"):
        weights = _parse_float_list(opts["weights"])
    else:
        weights = [1.0 / len(mats)] * len(mats)
    builder = optim.karcher_problem if opts["objective"] == "mean" else optim.median_problem
    try:
        problem = builder(weights, mats)
    except InvalidInput as exc:
        print(f"gmean: {exc}", file=sys.stderr)
        return EXIT_USAGE
    tol = opts.get("tol") or 1e-9
    report = optim.solve(problem, optim.SolverConfig(method=opts["method"], grad_tol=tol, max_iter=2000))
    linalg.save_matrix(opts["out"], report.minimizer)
    print(f"gmean: {report.status} after {report.niter} iterations -> {opts['out']}")
    return EXIT_OK if report.status == optim.CONVERGED else EXIT_NO_CONVERGENCE


def cmd_check(opts):
    rows = oracles.run_suite(opts["suite"], seed=int(opts["seed"]), trials=int(opts["trials"]))
    width = max(len(r.name) for r in rows)
    print(f"{'oracle':<{width}}  {'trials':>7}  {'violations':>10}  worst_slack")
    for r in rows:
        print(f"{r.name:<{width}}  {r.trials:>7}  {r.violations:>10}  {r.worst_slack:.3e}")
    failed = sum(r.violations for r in rows)
    print(f"check: {len(rows)} oracles, {failed} total violations")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


_COMMANDS = {
    "sample": cmd_sample,
    "fit": cmd_fit,
    "bench": cmd_bench,
    "gmean": cmd_gmean,
    "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    provided = {k: v for k, v in vars(ns).items() if k != "command"}
    try:
        opts = _effective_options(ns.command, provided)
        return _COMMANDS[ns.command](opts)
    except (InvalidInput, IncompatibleMethod) as exc:
        print(f"{ns.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RankError, DomainError) as exc:
        print(f"{ns.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
