"""Best trigonometric approximation in L_p (0 < p <= inf) and in Hölder norms.

For 0 < p < 1 the problem is nonconvex; results are upper bounds for E_n and
are never flagged as certified.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.optimize import linprog, minimize

from .moduli import (HolderSpec, QuasiNormSpec, _stencil, as_spec, holder_norm, lp_norm_rows)
from .spectral import (PeriodicFn, TrigPoly, UniformGrid, as_fn, check_finite, default_grid_size,
                       difference_multiplier, sample, sample_coeffs)


EXCHANGE_MIN_NODES = 1 << 15  # larger grids never build the dense design matrix


@dataclass(frozen=True)
class SolverConfig:
    eps_start: float = 1e-2
    eps_factor: float = 10.0
    eps_stages: int = 7
    max_iter: int = 5000
    rtol: float = 1e-10
    budget: int = 8
    perturb: float = 0.1
    holder_stages: int = 4
    holder_maxiter: int = 200
    inf_exponents: tuple[float, ...] = (16.0, 64.0, 256.0)

    def __post_init__(self):
        if self.budget < 0:
            raise ValueError("solver budget must be >= 0")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True, eq=False)
class ApproxResult:
    poly: TrigPoly
    value: float
    certified: bool
    starts_used: int
    solver_trace: tuple[float, ...] = field(default=())


def deterministic_seed(*parts) -> int:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _grid_for(f: PeriodicFn, n: int, grid: UniformGrid | None) -> UniformGrid:
    if grid is not None:
        if grid.size < 2 * n + 1:
            raise ValueError(f"grid size {grid.size} cannot resolve degree {n}")
        return grid
    M = default_grid_size(n)
    if f.bandwidth is not None:
        M = max(M, 4 * (f.bandwidth + 1))
    return UniformGrid(M)


class _Design:
    """Linear parametrisation T = A theta of polynomials of degree <= n on the grid."""

    def __init__(self, f: PeriodicFn, n: int, grid: UniformGrid, zero_mean: bool = False):
        self.n = n
        self.grid = grid
        self.real = f.real
        self.zero_mean = zero_mean
        self.y = sample(f, grid)
        if self.real:
            self.y = np.real(self.y).astype(float)
            self.dim = 2 * n + (0 if zero_mean else 1)
        else:
            self.y = self.y.astype(complex)
            nus = np.arange(-n, n + 1)
            self.nus = nus[nus != 0] if zero_mean else nus
            self.dim = self.nus.size
        self._A = None

    def rows(self, idx=None) -> np.ndarray:
        """Design matrix restricted to the nodes ``idx`` (all nodes by default)."""
        x = self.grid.nodes if idx is None else self.grid.nodes[idx]
        if self.real:
            k = np.arange(1, self.n + 1)
            cols = [] if self.zero_mean else [np.ones_like(x)[:, None]]
            cols += [np.cos(np.outer(x, k)), np.sin(np.outer(x, k))]
            return np.hstack(cols)
        return np.exp(1j * np.outer(x, self.nus))

    @property
    def A(self) -> np.ndarray:
        if self._A is None:
            self._A = self.rows()
        return self._A

    def poly(self, theta: np.ndarray) -> TrigPoly:
        n = self.n
        if self.real:
            a0 = 0.0 if self.zero_mean else theta[0]
            off = 0 if self.zero_mean else 1
            return TrigPoly.from_real(np.r_[a0, theta[off:off + n]], theta[off + n:off + 2 * n])
        c = np.zeros(2 * n + 1, dtype=complex)
        c[self.nus + n] = theta
        return TrigPoly(c)

    def params(self, T: TrigPoly) -> np.ndarray:
        n = self.n
        if T.degree < n:
            T = T.padded(n)
        c = T.coeffs[T.degree - n:T.degree + n + 1]
        if self.real:
            a0 = c[n].real
            a = 2 * c[n + 1:].real
            b = -2 * c[n + 1:].imag
            head = [] if self.zero_mean else [a0]
            return np.r_[head, a, b].astype(float)
        return c[self.nus + n].astype(complex)

    def residual(self, theta):
        if self._A is None and self.grid.size > EXCHANGE_MIN_NODES:
            T = self.poly(theta)
            vals = sample_coeffs(T.coeffs, self.grid.size)[0]
            return self.y - (vals.real if self.real else vals)
        return self.y - self.A @ theta

    def value(self, theta, spec: QuasiNormSpec) -> float:
        return float(lp_norm_rows(self.residual(theta), spec))

    def l2(self) -> np.ndarray:
        return np.linalg.lstsq(self.A, self.y, rcond=None)[0]


def _smoothed(e: np.ndarray, p: float, eps: float) -> float:
    return float(np.mean((np.abs(e) ** 2 + eps * eps) ** (p / 2)))


def _irls(D: _Design, theta: np.ndarray, p: float, cfg: SolverConfig) -> np.ndarray:
    """Smoothed-objective descent: reweighted least squares steps with backtracking."""
    A, y = D.A, D.y
    scale = max(float(np.max(np.abs(y))), 1e-300)
    eps = cfg.eps_start * scale
    for _ in range(cfg.eps_stages):
        obj = _smoothed(y - A @ theta, p, eps)
        for _ in range(cfg.max_iter):
            e = y - A @ theta
            w = (np.abs(e) ** 2 + eps * eps) ** (p / 2 - 1)
            sw = np.sqrt(w / w.max())
            try:
                target = sla.lstsq(sw[:, None] * A, sw * y, lapack_driver="gelsy",
                                   check_finite=False)[0]
            except (np.linalg.LinAlgError, ValueError):
                break
            step = target - theta
            t = 1.0
            while True:
                cand = theta + t * step
                new = _smoothed(y - A @ cand, p, eps)
                if new <= obj or t < 1e-6:
                    break
                t *= 0.5
            if not np.isfinite(new):
                raise FloatingPointError("non-finite objective in smoothed descent")
            if new > obj:
                break
            decrease = (obj - new) / max(obj, 1e-300)
            theta, obj = cand, new
            if decrease < cfg.rtol:
                break
        eps /= cfg.eps_factor
    return theta


def _localized_multiplier(n: int, power: int) -> np.ndarray:
    """Coefficients (length 2n+1) of the normalized Fejér kernel power of degree <= n."""
    m = n // power
    a = 1.0 - np.abs(np.arange(-m, m + 1)) / (m + 1)
    k = np.array([1.0])
    for _ in range(power):
        k = np.convolve(k, a)
    k = k / k[k.size // 2]
    out = np.zeros(2 * n + 1)
    d = (k.size - 1) // 2
    out[n - d:n + d + 1] = k
    return out


def _localized_starts(D: _Design, powers=(3,)) -> list[np.ndarray]:
    """Means with rapidly decaying kernels; their errors localize near singularities,
    which is what small-p objectives reward."""
    n, M = D.n, D.grid.size
    nus = np.arange(-n, n + 1)
    spec = np.fft.fft(D.y) / M
    c = spec[nus % M]
    out = []
    for s in powers:
        if n // s < 1:
            continue
        cc = c * _localized_multiplier(n, s)
        if D.zero_mean:
            cc[n] = 0.0
        T = TrigPoly(cc)
        if D.real:
            T = TrigPoly(0.5 * (T.coeffs + np.conj(T.coeffs[::-1])))
        out.append(D.params(T))
    return out


def _minimax_lp(D: _Design, idx=None) -> np.ndarray:
    if idx is None and (D.grid.size > EXCHANGE_MIN_NODES or D.grid.size > 16 * (D.dim + 1)):
        return _minimax_exchange(D)
    A = D.A if idx is None else D.rows(idx)
    y = D.y if idx is None else D.y[idx]
    M, d = A.shape
    ones = np.ones((M, 1))
    A_ub = np.vstack([np.hstack([A, -ones]), np.hstack([-A, -ones])])
    b_ub = np.r_[y, -y]
    c = np.zeros(d + 1)
    c[-1] = 1.0
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (d + 1), method="highs")
    if res.status != 0:
        raise RuntimeError(f"minimax LP failed: {res.message}")
    return res.x[:d]


def _minimax_exchange(D: _Design, max_rounds: int = 50) -> np.ndarray:
    """Grid minimax by node exchange: LP on a subset, add the worst nodes, repeat.

    Stops once the full-grid sup equals the subset optimum, so the result is
    the exact minimax on the whole grid.
    """
    M = D.grid.size
    idx = np.unique(np.linspace(0, M, min(M, 4 * (D.dim + 1)), endpoint=False).astype(int))
    for _ in range(max_rounds):
        theta = _minimax_lp(D, idx)
        err = np.abs(D.residual(theta))
        level = err[idx].max()
        if err.max() <= level * (1 + 1e-9) + 1e-14:
            return theta
        # local maxima of |e| above the subset optimum, worst first
        peak = (err >= np.roll(err, 1)) & (err >= np.roll(err, -1)) & (err > level)
        cand = np.flatnonzero(peak)
        cand = cand[np.argsort(err[cand])[::-1][:4 * D.dim]]
        idx = np.union1d(idx, cand)
    raise RuntimeError("minimax exchange did not converge")


def _minimax_complex(D: _Design) -> np.ndarray:
    import cvxpy as cp

    z = cp.Variable(D.dim, complex=True)
    prob = cp.Problem(cp.Minimize(cp.max(cp.abs(D.y - D.A @ z))))
    prob.solve()
    if z.value is None:
        raise RuntimeError(f"complex minimax failed: {prob.status}")
    return np.asarray(z.value)


def _l1_lp(D: _Design) -> np.ndarray:
    A, y = D.A, D.y
    M, d = A.shape
    I = sp.identity(M, format="csr")
    A_ub = sp.vstack([sp.hstack([sp.csr_matrix(A), -I]), sp.hstack([sp.csr_matrix(-A), -I])])
    c = np.r_[np.zeros(d), np.ones(M) / M]
    bounds = [(None, None)] * d + [(0, None)] * M
    res = linprog(c, A_ub=A_ub.tocsr(), b_ub=np.r_[y, -y], bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"L1 LP failed: {res.message}")
    return res.x[:d]


def _l2_exact(f: PeriodicFn, n: int, grid: UniformGrid, zero_mean: bool) -> tuple[TrigPoly, float]:
    if f.coeffs is not None and (f.bandwidth or 0) < grid.size // 2:
        c = {k: v for k, v in f.coeffs.items() if abs(k) <= n and not (zero_mean and k == 0)}
        tail = sum(abs(v) ** 2 for k, v in f.coeffs.items() if k not in c)
        return TrigPoly.from_dict(c, n), math.sqrt(tail)
    M = grid.size
    if M < 4 * (n + 1):
        raise ValueError(f"grid size {M} too small for degree {n}: need M >= {4 * (n + 1)}")
    vals = sample(f, grid)
    spec = np.fft.fft(vals) / M
    nus = np.arange(-n, n + 1)
    keep = np.zeros(M, dtype=bool)
    keep[nus % M] = True
    if zero_mean:
        keep[0] = False
    c = np.where(keep[nus % M], spec[nus % M], 0.0)
    T = TrigPoly(c)
    if f.real:
        T = TrigPoly(0.5 * (T.coeffs + np.conj(T.coeffs[::-1])))
    return T, float(math.sqrt(np.sum(np.abs(spec[~keep]) ** 2)))


def best_approx_l2(f, n: int, grid: UniformGrid | None = None) -> ApproxResult:
    """Fourier partial sum; the error is the Parseval tail."""
    f = as_fn(f)
    grid = _grid_for(f, n, grid)
    T, val = _l2_exact(f, n, grid, False)
    return ApproxResult(T, val, True, 1, (val,))


def _as_list(warm) -> list[TrigPoly]:
    if warm is None:
        return []
    if isinstance(warm, TrigPoly):
        return [warm]
    return [w.poly if isinstance(w, ApproxResult) else w for w in warm]


def _solve(f, n: int, spec, budget: int | None, grid, warm_start, config: SolverConfig,
           zero_mean: bool, seed) -> ApproxResult:
    f = as_fn(f)
    spec = as_spec(spec)
    if n < 0:
        raise ValueError("degree must be >= 0")
    budget = config.budget if budget is None else budget
    if budget == 0 and spec.p < 1:
        raise ValueError("solver budget must be positive for p < 1")
    grid = _grid_for(f, n, grid)
    D = _Design(f, n, grid, zero_mean)
    p = spec.p
    cands: list[np.ndarray] = [D.params(T) for T in _as_list(warm_start)]
    trace: list[float] = []

    if p == 2:
        T, _ = _l2_exact(f, n, grid, zero_mean)
        cands.insert(0, D.params(T))
        certified, starts = True, 1
    elif math.isinf(p):
        theta = _minimax_lp(D) if D.real else _minimax_complex(D)
        cands.insert(0, theta)
        certified, starts = True, 1
    else:
        l2 = D.l2()
        if p >= 1:
            init = min(cands + [l2], key=lambda th: D.value(th, spec))
            cands = [_irls(D, init, p, config), l2] + cands
            certified, starts = False, 1
        else:
            l1 = _l1_lp(D) if D.real else _irls(D, l2, 1.0, replace(config, eps_stages=4))
            seed = deterministic_seed(f.label, n, p, zero_mean) if seed is None else seed
            rng = np.random.default_rng(seed)
            starts_list = [l2, l1] + _localized_starts(D) + cands
            for i in range(budget):
                base = starts_list[i % 2]
                scale = config.perturb * (np.linalg.norm(base) / math.sqrt(base.size) + 1e-12)
                noise = rng.standard_normal(base.shape)
                if not D.real:
                    noise = noise + 1j * rng.standard_normal(base.shape)
                starts_list.append(base + scale * noise)
            results = [_irls(D, th, p, config) for th in starts_list]
            cands = results + starts_list
            certified, starts = False, len(starts_list)

    best, best_val = None, math.inf
    for th in cands:
        v = D.value(th, spec)
        trace.append(v)
        if v < best_val:
            best, best_val = th, v
    T = D.poly(best)
    if f.real:
        T = TrigPoly(T.coeffs, T.label)
    return ApproxResult(T, best_val, certified, starts, tuple(trace))


def best_approx(f, n: int, spec, budget: int | None = None, grid: UniformGrid | None = None,
                warm_start=None, config: SolverConfig = DEFAULT_CONFIG, seed=None) -> ApproxResult:
    """Near-best polynomial of degree <= n in the discrete L_p (quasi-)norm.

    ``warm_start`` polynomials are always included as candidates, so the
    result is never worse than any of them.
    """
    return _solve(f, n, spec, budget, grid, warm_start, config, False, seed)


def en_zero(f, n: int, spec, budget: int | None = None, grid: UniformGrid | None = None,
            warm_start=None, config: SolverConfig = DEFAULT_CONFIG, seed=None) -> ApproxResult:
    """Best approximation by polynomials with zero mean (c_0 = 0)."""
    warm = [TrigPoly(np.where(T.freqs == 0, 0, T.coeffs)) for T in _as_list(warm_start)]
    return _solve(f, n, spec, budget, grid, warm, config, True, seed)


class _HolderObjective:
    """Smoothed ||f - T||_p + smooth-max_h h^-alpha ||Delta_h^r (f - T)||_p."""

    def __init__(self, f: PeriodicFn, n: int, hs_spec: HolderSpec, grid: UniformGrid):
        self.n = n
        self.M = grid.size
        self.real = f.real
        x = grid.nodes
        self.hs = hs_spec.hgrid.values
        self.alpha = hs_spec.alpha
        self.p = hs_spec.p.p
        rows = [sample(f, grid)]
        for h in self.hs:
            rows.append(sum(w * f(x + nu * h) for nu, w in _stencil(hs_spec.r)))
        self.F = np.array(rows, dtype=complex)
        check_finite(self.F)
        freqs = np.arange(-n, n + 1)
        self.freqs = freqs
        self.mult = np.vstack([np.ones(2 * n + 1), difference_multiplier(freqs, self.hs, hs_spec.r)])
        self.weights = np.r_[1.0, self.hs ** (-self.alpha)]
        if self.real:
            R = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
            R[n, 0] = 1.0
            for k in range(1, n + 1):
                R[n + k, k], R[n - k, k] = 0.5, 0.5
                R[n + k, n + k], R[n - k, n + k] = -0.5j, 0.5j
        else:
            R = np.hstack([np.eye(2 * n + 1), 1j * np.eye(2 * n + 1)]).astype(complex)
        self.R = R

    def coeffs(self, theta):
        return self.R @ theta

    def theta_of(self, T: TrigPoly) -> np.ndarray:
        c = T.padded(self.n).coeffs if T.degree < self.n else T.coeffs[T.degree - self.n:T.degree + self.n + 1]
        if self.real:
            n = self.n
            return np.r_[c[n].real, 2 * c[n + 1:].real, -2 * c[n + 1:].imag]
        return np.r_[c.real, c.imag]

    def errors(self, theta):
        c = self.coeffs(theta)
        return self.F - sample_coeffs(self.mult * c[None, :], self.M)

    def __call__(self, theta, p_eff: float, eps: float, tau: float):
        E = self.errors(theta)
        s = np.sqrt(np.abs(E) ** 2 + eps * eps)
        m = s.max(axis=1, keepdims=True)
        Nrm = m[:, 0] * np.mean((s / m) ** p_eff, axis=1) ** (1 / p_eff)
        V = self.weights * Nrm
        lp_term, terms = V[0], V[1:]
        vmax = terms.max()
        ex = np.exp((terms - vmax) / tau)
        smax = vmax + tau * math.log(ex.sum())
        pi = np.r_[1.0, ex / ex.sum()]
        # d N / d conj(e_j) = (N / M) (s_j / N)^p e_j / (2 s_j^2)
        G = (Nrm[:, None] / self.M) * (s / Nrm[:, None]) ** p_eff * E / (2 * s * s)
        G *= (pi * self.weights)[:, None]
        ghat = np.fft.fft(G, axis=1)[:, self.freqs % self.M]
        gc = -np.sum(np.conj(self.mult) * ghat, axis=0)
        grad = 2 * np.real(self.R.conj().T @ gc)
        return lp_term + smax, grad


def best_approx_holder(f, n: int, hs_spec: HolderSpec, budget: int | None = None,
                       grid: UniformGrid | None = None, warm_start=None,
                       config: SolverConfig = DEFAULT_CONFIG, seed=None) -> ApproxResult:
    """Near-best polynomial in the Hölder norm ||.||_p + sup_h ||Delta_h^r .||_p / h^alpha.

    The objective is smoothed (|u|^2 + eps^2)^(p/2) and the finite max over
    the h-grid is replaced by a log-sum-exp whose temperature is lowered in
    stages. The returned value is the exact discrete Hölder norm.
    """
    f = as_fn(f)
    grid = _grid_for(f, n, grid)
    budget = config.budget if budget is None else budget
    if budget == 0 and hs_spec.p.p < 1:
        raise ValueError("solver budget must be positive for p < 1")
    obj = _HolderObjective(f, n, hs_spec, grid)
    p = hs_spec.p.p

    def exact(T: TrigPoly) -> float:
        return holder_norm(f - T.to_fn(), hs_spec, grid)

    starts: list[TrigPoly] = [best_approx_l2(f, n, grid).poly]
    if not math.isinf(p) and p != 2:
        starts.append(best_approx(f, n, hs_spec.p, budget=min(budget, 2) if p < 1 else None,
                                  grid=grid, config=config, seed=seed).poly)
    starts += _as_list(warm_start)
    thetas = [obj.theta_of(T) for T in starts]
    if p < 1 and budget > 2:
        rng = np.random.default_rng(deterministic_seed(f.label, n, p, "holder") if seed is None else seed)
        for i in range(budget - 2):
            base = thetas[i % len(thetas)]
            scale = config.perturb * (np.linalg.norm(base) / math.sqrt(base.size) + 1e-12)
            thetas.append(base + scale * rng.standard_normal(base.shape))

    y_scale = float(np.max(np.abs(obj.F[0]))) or 1.0
    stages = max(1, config.holder_stages)
    results: list[TrigPoly] = []
    for th in thetas:
        for s in range(stages):
            frac = s / max(stages - 1, 1)
            eps = y_scale * 10.0 ** (-3 - 4 * frac)
            p_eff = p if not math.isinf(p) else config.inf_exponents[
                min(s, len(config.inf_exponents) - 1)]
            V = obj(th, p_eff, eps, 1.0)[0]
            tau = max(V, 1e-12) * 10.0 ** (-1 - 2 * frac)
            res = minimize(obj, th, args=(p_eff, eps, tau), jac=True, method="L-BFGS-B",
                           options={"maxiter": config.holder_maxiter})
            if np.all(np.isfinite(res.x)):
                th = res.x
        c = obj.coeffs(th)
        results.append(TrigPoly(c))

    cands = starts + results
    vals = [exact(T) for T in cands]
    i = int(np.argmin(vals))
    T = cands[i]
    value = vals[i]
    if f.real:
        S = TrigPoly(0.5 * (T.coeffs + np.conj(T.coeffs[::-1])))
        vs = exact(S)
        if vs <= value:
            T, value = S, vs
    return ApproxResult(T, float(value), False, len(thetas), tuple(vals))
