"""Command-line front end: norms, moduli, best approximations, means and verification suites.

Every command builds a :class:`RunConfig` (JSON file first, then flags) and
validates it before any computation. Results go to stdout; ``--out`` also
writes a report (CSV or JSON) whose header records the full configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from . import experiments as ex
from .bestapprox import DEFAULT_CONFIG, best_approx, best_approx_holder
from .means import KERNEL_NAMES, family_means, fourier_mean, kernel_catalog, require_bounded
from .moduli import (HGrid, HolderSpec, as_spec, averaged_lp_norm, family_holder_error, fn_norm,
                     holder_norm, omega, psi, theta)
from .spectral import UniformGrid, sample
from .testfns import CATALOG_NAMES, get_entry

MODULUS_KINDS = ("omega", "theta", "psi")
COMMANDS = ("norm", "modulus", "holder-norm", "best-approx", "means", "verify", "rates")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "norm"
    target: str | None = None  # modulus kind or suite name
    fn: str | None = None
    fn_params: dict = field(default_factory=dict)
    p: float | None = None
    r: int = 1
    alpha: float = 0.5
    k: int = 1
    t: float | None = None
    n: int = 8
    ns: list[int] | None = None
    kernel: str = "fejer"
    grid_size: int | None = None
    h_points: int = 32
    lam_points: int = 64
    budget: int | None = None
    trials: int | None = None
    seed: int = 0
    holder: bool = False
    out: str | None = None
    format: str = "csv"

    def as_dict(self) -> dict:
        return asdict(self)


def _parse_p(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    if s in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid p: {text!r}") from None


def validate(cfg: RunConfig) -> RunConfig:
    """Check every numeric parameter against the preconditions of the called routine."""
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.command == "modulus" and cfg.target not in MODULUS_KINDS:
        raise ConfigError(f"modulus kind must be one of {', '.join(MODULUS_KINDS)}")
    if cfg.command == "verify" and cfg.target not in ex.SUITES:
        raise ConfigError(f"unknown suite {cfg.target!r}; choose from {', '.join(ex.SUITES)}")
    if cfg.fn is not None and cfg.fn not in CATALOG_NAMES:
        raise ConfigError(f"unknown function {cfg.fn!r}; choose from {', '.join(CATALOG_NAMES)}")
    if cfg.p is not None and not cfg.p > 0:
        raise ConfigError(f"p must be positive (got {cfg.p})")
    for name in ("r", "k"):
        v = getattr(cfg, name)
        if int(v) != v or v < 1:
            raise ConfigError(f"{name} must be a positive integer (got {v})")
    if not cfg.alpha > 0:
        raise ConfigError(f"alpha must be positive (got {cfg.alpha})")
    if cfg.alpha > cfg.r:
        raise ConfigError(
            f"alpha <= r is required (got alpha={cfg.alpha}, r={cfg.r}): for alpha > r only constants "
            "have a finite Hölder seminorm, so best approximation in that norm is infinite")
    if cfg.t is not None and not cfg.t > 0:
        raise ConfigError(f"t must be positive (got {cfg.t})")
    if cfg.n < 0:
        raise ConfigError(f"n must be >= 0 (got {cfg.n})")
    if cfg.ns is not None and (not cfg.ns or min(cfg.ns) < 1):
        raise ConfigError("ns must be a non-empty list of positive degrees")
    if cfg.kernel not in KERNEL_NAMES:
        raise ConfigError(f"unknown kernel {cfg.kernel!r}; choose from {', '.join(KERNEL_NAMES)}")
    if cfg.grid_size is not None and cfg.grid_size < 2 * cfg.n + 1:
        raise ConfigError(f"grid size M={cfg.grid_size} must be >= 2n+1={2 * cfg.n + 1}")
    if cfg.h_points < 2 or cfg.lam_points < 1:
        raise ConfigError("h_points must be >= 2 and lam_points >= 1")
    if cfg.budget is not None and cfg.budget < 0:
        raise ConfigError("budget must be >= 0")
    if cfg.budget == 0 and cfg.p is not None and cfg.p < 1 and cfg.command == "best-approx":
        raise ConfigError("budget must be positive for p < 1 (nonconvex problem)")
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    return cfg


def load_config(path: str | None, overrides: dict) -> RunConfig:
    base: dict = {}
    if path:
        try:
            with open(path) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = set(base) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "p" in base and base["p"] is not None:
            base["p"] = _parse_p(base["p"])
    base.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = RunConfig(**base)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return validate(cfg)


def _entry(cfg: RunConfig, default: str | None = None):
    name = cfg.fn or default
    if name is None:
        raise ConfigError("--fn is required for this command")
    return get_entry(name, **cfg.fn_params)


def _grid(cfg: RunConfig) -> UniformGrid | None:
    return UniformGrid(cfg.grid_size) if cfg.grid_size else None


def _hgrid(cfg: RunConfig) -> HGrid:
    return HGrid(per_decade=cfg.h_points)


def _hs(cfg: RunConfig, p_default: float) -> HolderSpec:
    return HolderSpec(p=cfg.p if cfg.p is not None else p_default, r=cfg.r, alpha=cfg.alpha,
                      per_decade=cfg.h_points)


def _single(cfg: RunConfig, fn_name: str, quantity: str, value: float, **coords) -> ex.Report:
    rep = ex.Report(cfg.command, cfg.as_dict())
    rep.add(fn_name, quantity, value, **coords)
    return rep


def run_norm(cfg: RunConfig) -> ex.Report:
    e = _entry(cfg)
    p = cfg.p if cfg.p is not None else 2.0
    return _single(cfg, e.name, "norm", fn_norm(e.fn, p, _grid(cfg)), p=p)


def run_modulus(cfg: RunConfig) -> ex.Report:
    e = _entry(cfg)
    p = cfg.p if cfg.p is not None else 2.0
    t = cfg.t if cfg.t is not None else 1.0 / max(cfg.n, 1)
    g, hg = _grid(cfg), _hgrid(cfg)
    if cfg.target == "omega":
        v = omega(e.fn, cfg.k, t, p, g, hg)
    elif cfg.target == "theta":
        v = theta(e.fn, cfg.k, cfg.alpha, t, p, g, hg)
    else:
        v = psi(e.fn, cfg.k, cfg.r, cfg.alpha, t, p, g, hg)
    return _single(cfg, e.name, cfg.target, v, p=p, r=cfg.r, alpha=cfg.alpha, k=cfg.k, h=t)


def run_holder_norm(cfg: RunConfig) -> ex.Report:
    e = _entry(cfg)
    hs = _hs(cfg, 2.0)
    return _single(cfg, e.name, "holder_norm", holder_norm(e.fn, hs, _grid(cfg)),
                   p=hs.p.p, r=hs.r, alpha=hs.alpha)


class SolverFailure(RuntimeError):
    def __init__(self, message: str, trace_path: str):
        super().__init__(message)
        self.trace_path = trace_path


def run_best_approx(cfg: RunConfig) -> ex.Report:
    e = _entry(cfg)
    p = cfg.p if cfg.p is not None else 2.0
    config = replace(DEFAULT_CONFIG, budget=cfg.budget) if cfg.budget is not None else DEFAULT_CONFIG
    if cfg.holder:
        hs = _hs(cfg, p)
        res = best_approx_holder(e.fn, cfg.n, hs, grid=_grid(cfg), config=config, seed=cfg.seed)
        quantity = "E_n^H(upper)"
    else:
        res = best_approx(e.fn, cfg.n, p, grid=_grid(cfg), config=config, seed=cfg.seed)
        quantity = "E_n(upper)" if not res.certified else "E_n"
    if not math.isfinite(res.value):
        path = os.path.join(cfg.out or ".", f"best-approx-trace-{e.name}-n{cfg.n}.json")
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w") as fh:
            json.dump({"config": ex.jsonable(cfg.as_dict()), "trace": ex.jsonable(list(res.solver_trace))},
                      fh, indent=2)
        raise SolverFailure("solver did not converge to a finite value", path)
    rep = _single(cfg, e.name, quantity, res.value, p=p, n=cfg.n)
    rep.parameters["certified"] = res.certified
    rep.parameters["starts_used"] = res.starts_used
    rep.parameters["poly"] = json.loads(res.poly.to_json())
    return rep


def run_means(cfg: RunConfig) -> ex.Report:
    e = _entry(cfg)
    p = cfg.p if cfg.p is not None else 2.0
    n = max(cfg.n, 1)
    K = kernel_catalog(cfg.kernel, n)
    rep = ex.Report("means", cfg.as_dict())
    grid = _grid(cfg) or UniformGrid(max(1024, 16 * (n + 1), 4 * ((e.fn.bandwidth or 0) + 1)))
    if as_spec(p).p >= 1:
        L = fourier_mean(e.fn, K, grid)
        err = fn_norm(e.fn - L.to_fn(), p, grid)
        rep.add(e.name, "||f-L_n f||_p", err, p=p, n=n)
        rep.parameters["poly"] = json.loads(L.to_json())
    else:
        require_bounded(K)
        fam = family_means(e.fn, K, UniformGrid(cfg.lam_points))
        f0 = sample(e.fn, grid)
        rows = np.array([f0 - T.sample(grid.size) for T in fam])
        rep.add(e.name, "||f-L_n,lam f||_pbar", averaged_lp_norm(rows, p), p=p, n=n)
        rep.add(e.name, "holder_error_pbar", family_holder_error(e.fn, fam, _hs(cfg, p), grid),
                p=p, r=cfg.r, alpha=cfg.alpha, n=n)
    return rep


def run_verify(cfg: RunConfig) -> ex.Report:
    s = cfg.target
    ns = cfg.ns
    budget = cfg.budget
    ps = [cfg.p] if cfg.p is not None else None
    if s == "jackson":
        kw = {}
        if cfg.fn:
            kw["entries"] = [_entry(cfg)]
        if ps:
            kw["ps"] = ps
        if ns:
            kw["ns"] = ns
        return ex.verify_jackson(budget=budget if budget is not None else 4, **kw)
    if s == "stechkin":
        kw = {"seed": cfg.seed}
        if ps:
            kw["ps"] = ps
        if ns:
            kw["ns"] = ns
        if cfg.trials:
            kw["trials"] = cfg.trials
        return ex.verify_stechkin_nikolskii(**kw)
    if s == "direct-inverse":
        return ex.verify_direct_inverse_holder(_entry(cfg, "lacunary"), _hs(cfg, math.inf), cfg.k, ns,
                                               budget if budget is not None else 2)
    if s == "sandwich":
        if cfg.fn is None and cfg.p is None:
            return ex.verify_sandwich_all(budget=budget if budget is not None else 2)
        return ex.verify_sandwich_lem4(_entry(cfg, "triangle"), _hs(cfg, 2.0), ns,
                                       budget if budget is not None else 2)
    if s == "counterexample":
        kw = {"ns": ns} if ns else {}
        return ex.counterexample_h11(p=cfg.p if cfg.p is not None else 0.5,
                                     budget=budget if budget is not None else 2, **kw)
    if s == "strong-converse":
        return ex.verify_strong_converse(cfg.kernel, _hs(cfg, 2.0), _entry(cfg, "lacunary"), cfg.k, ns,
                                         cfg.lam_points)
    if s == "pr2":
        kw = {"ns": ns} if ns else {}
        return ex.verify_pr2_lower_bound(_entry(cfg, "triangle"), _hs(cfg, 0.5),
                                         budget=budget if budget is not None else 2, **kw)
    if s == "integral-condition":
        return ex.verify_integral_condition(_entry(cfg, "triangle"), _hs(cfg, 1.0), cfg.k)
    kw = {"seed": cfg.seed}
    if ps:
        kw["ps"] = ps
    if cfg.trials is not None:
        kw["n_random"] = cfg.trials
    return ex.verify_modulus_properties(**kw)


def run_rates(cfg: RunConfig) -> ex.Report:
    kw = {}
    if cfg.fn:
        kw["entries"] = [_entry(cfg)]
    if cfg.p is not None:
        kw["ps"] = [cfg.p]
    if cfg.grid_size:
        kw["grid_size"] = cfg.grid_size
    return ex.rates(ks=[cfg.k], **kw)


RUNNERS = {"norm": run_norm, "modulus": run_modulus, "holder-norm": run_holder_norm,
           "best-approx": run_best_approx, "means": run_means, "verify": run_verify,
           "rates": run_rates}


def run(cfg: RunConfig) -> int:
    """Execute a validated config; return the process exit status."""
    try:
        rep = RUNNERS[cfg.command](cfg)
    except SolverFailure as exc:
        print(f"error: {exc}; trace written to {exc.trace_path}", file=sys.stderr)
        return EXIT_SOLVER
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rep.parameters.setdefault("config", ex.jsonable(cfg.as_dict()))
    if cfg.command in ("verify", "rates"):
        print(rep.summary())
    else:
        for row in rep.rows:
            print(f"{row.quantity} = {row.value:.12g}")
    if cfg.out:
        path = rep.write(cfg.out, cfg.format)
        print(f"wrote {path}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    sp.add_argument("--fn", help=f"catalog function: {', '.join(CATALOG_NAMES)}")
    sp.add_argument("--fn-params", dest="fn_params", type=json.loads,
                    help='JSON object of function parameters, e.g. \'{"gamma": 0.5}\'')
    sp.add_argument("--p", type=_parse_p, help="exponent p > 0 (use 'inf' for the sup norm)")
    sp.add_argument("--r", type=int, help="Hölder difference order r")
    sp.add_argument("--alpha", type=float, help="Hölder exponent, 0 < alpha <= r")
    sp.add_argument("--k", type=int, help="modulus order k")
    sp.add_argument("--t", type=float, help="modulus argument (step bound)")
    sp.add_argument("--n", type=int, help="polynomial degree")
    sp.add_argument("--ns", type=lambda s: [int(x) for x in s.split(",")],
                    help="comma-separated degrees for sweeps")
    sp.add_argument("--kernel", help=f"kernel: {', '.join(KERNEL_NAMES)}")
    sp.add_argument("--grid-size", dest="grid_size", type=int, help="sampling grid size M")
    sp.add_argument("--h-points", dest="h_points", type=int, help="h-grid points per decade")
    sp.add_argument("--lam-points", dest="lam_points", type=int, help="shift (lambda) grid size")
    sp.add_argument("--budget", type=int, help="solver restart budget")
    sp.add_argument("--trials", type=int, help="random polynomials per cell")
    sp.add_argument("--seed", type=int, help="random seed")
    sp.add_argument("--out", help="directory for the report file")
    sp.add_argument("--format", choices=("csv", "json"), help="report format")


def build_parser() -> argparse.ArgumentParser:
    suites = "\n".join(f"  {name:20s} {desc}" for name, desc in ex.SUITES.items())
    parser = argparse.ArgumentParser(
        prog="approxlab",
        description="Approximation in L_p (0 < p <= inf) and Hölder-type spaces of periodic functions.",
        epilog=f"verification suites:\n{suites}\n\nenvironment: {ex.THREADS_ENV} caps worker threads",
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("norm", help="discrete L_p quasi-norm of a catalog function"))
    sp = sub.add_parser("modulus", help="omega_k, theta_{k,alpha} or psi_{k,r,alpha} at t")
    sp.add_argument("target", choices=MODULUS_KINDS)
    _add_common(sp)
    _add_common(sub.add_parser("holder-norm", help="Hölder (quasi-)norm with parameters p, r, alpha"))
    sp = sub.add_parser("best-approx", help="near-best polynomial of degree n (L_p or Hölder norm)")
    sp.add_argument("--holder", action="store_true", default=None, help="approximate in the Hölder norm")
    _add_common(sp)
    _add_common(sub.add_parser("means", help="error of kernel means (sampled family when p < 1)"))
    sp = sub.add_parser("verify", help="run a verification suite",
                        epilog=f"suites:\n{suites}", formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("target", metavar="suite", choices=list(ex.SUITES))
    _add_common(sp)
    _add_common(sub.add_parser("rates", help="fitted modulus rates against known exponents"))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    path = args.pop("config", None)
    try:
        cfg = load_config(path, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
