"""Quasi-norms, finite differences, moduli of smoothness and Hölder (quasi-)norms.

Every supremum over a continuous step h or scale delta is taken over one
shared geometric grid (:class:`HGrid`). Nested suprema and monotonicity
checks therefore agree exactly with each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import comb

from .spectral import (TWO_PI, PeriodicFn, TrigPoly, UniformGrid, as_fn, check_finite,
                       default_grid_size, difference_multiplier, sample, sample_coeffs)

_CHUNK = 1 << 21


@dataclass(frozen=True)
class QuasiNormSpec:
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def p1(self) -> float:
        return min(self.p, 1.0)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)


def as_spec(p) -> QuasiNormSpec:
    return p if isinstance(p, QuasiNormSpec) else QuasiNormSpec(p)


@lru_cache(maxsize=32)
def _geometric(h_min: float, h_max: float, per_decade: int) -> np.ndarray:
    count = max(1, int(round(math.log10(h_max / h_min) * per_decade)))
    hs = h_min * (h_max / h_min) ** (np.arange(count + 1) / count)
    hs[0], hs[-1] = h_min, h_max
    hs.setflags(write=False)
    return hs


@dataclass(frozen=True)
class HGrid:
    """Geometric grid of steps, stored in increasing order."""

    h_min: float = TWO_PI * 1e-4
    h_max: float = TWO_PI
    per_decade: int = 32

    def __post_init__(self):
        if not 0 < self.h_min < self.h_max:
            raise ValueError("need 0 < h_min < h_max")

    @property
    def values(self) -> np.ndarray:
        return _geometric(float(self.h_min), float(self.h_max), int(self.per_decade))

    def upto(self, t: float) -> np.ndarray:
        if t < self.h_min * (1 - 1e-12):
            raise ValueError(f"scale {t:g} is below the smallest grid step {self.h_min:g}; "
                             "use a finer h-grid (smaller h_min)")
        hs = self.values
        return hs[hs <= t * (1 + 1e-12)]

    def count_upto(self, t: float) -> int:
        return self.upto(t).size


DEFAULT_HGRID = HGrid()


@dataclass(frozen=True)
class HolderSpec:
    p: QuasiNormSpec
    r: int
    alpha: float
    h_max: float = TWO_PI
    h_min: float = TWO_PI * 1e-4
    per_decade: int = 32

    def __post_init__(self):
        object.__setattr__(self, "p", as_spec(self.p))
        if int(self.r) != self.r or self.r < 1:
            raise ValueError(f"difference order r must be a positive integer, got {self.r}")
        object.__setattr__(self, "r", int(self.r))
        if not 0 < self.alpha <= self.r:
            raise ValueError(
                f"need 0 < alpha <= r (got alpha={self.alpha}, r={self.r}); for alpha > r the "
                "best approximation in the Hölder norm is infinite for non-constant functions")

    @property
    def hgrid(self) -> HGrid:
        return HGrid(self.h_min, self.h_max, self.per_decade)


@dataclass(frozen=True)
class HSweep:
    """Measured values on the h-grid together with their maximum."""

    hs: np.ndarray
    measured: np.ndarray
    sup: float
    argmax: float
    at_lower_edge: bool = False
    tail_bound: float | None = None

    @property
    def values(self) -> list[tuple[float, float]]:
        return list(zip(self.hs.tolist(), self.measured.tolist()))

    def __float__(self) -> float:
        return float(self.sup)


def _sweep(hs: np.ndarray, vals: np.ndarray, tail_bound=None) -> HSweep:
    if hs.size == 0:
        raise ValueError("empty h-sweep")
    i = int(np.argmax(vals))  # first maximum in increasing h: ties go to smaller h
    edge = i == 0 and (vals.size == 1 or vals[0] >= vals[1]) and vals[0] > 0
    return HSweep(hs, vals, float(vals[i]), float(hs[i]), bool(edge), tail_bound)


def _default_grid(f: PeriodicFn, grid: UniformGrid | None) -> UniformGrid:
    if grid is not None:
        return grid
    bw = f.bandwidth
    return UniformGrid(default_grid_size(0) if bw is None else max(default_grid_size(0), 4 * (bw + 1)))


def lp_norm_rows(vals: np.ndarray, p) -> np.ndarray:
    """Normalised discrete L_p (quasi-)norm along the last axis."""
    p = as_spec(p).p
    a = np.abs(vals)
    if math.isinf(p):
        return a.max(axis=-1)
    if p == 2:
        return np.sqrt(np.mean(a * a, axis=-1))
    if p == 1:
        return a.mean(axis=-1)
    return np.mean(a ** p, axis=-1) ** (1.0 / p)


def lp_norm(values, spec) -> float:
    """((1/M) sum |f_j|^p)^(1/p), or max |f_j| for p = inf."""
    vals = np.asarray(values)
    if vals.size == 0:
        raise ValueError("lp_norm of an empty sample vector")
    check_finite(vals)
    return float(lp_norm_rows(vals.ravel(), spec))


def fn_norm(f, spec, grid: UniformGrid | None = None) -> float:
    f = as_fn(f)
    spec = as_spec(spec)
    if spec.p == 2 and f.coeffs is not None:
        return math.sqrt(sum(abs(c) ** 2 for c in f.coeffs.values()))
    return lp_norm(sample(f, _default_grid(f, grid)), spec)


def finite_difference(f, h: float, k: int) -> PeriodicFn:
    """x -> sum_{nu=0}^k (-1)^nu C(k, nu) f(x + nu h), kept lazy."""
    if k < 1:
        raise ValueError("difference order must be >= 1")
    f = as_fn(f)
    ev = f.evaluator
    weights = [(-1) ** nu * comb(k, nu, exact=True) for nu in range(k + 1)]

    def diff(x):
        x = np.asarray(x, dtype=float)
        return sum(w * ev(x + nu * h) for nu, w in enumerate(weights))

    co = None
    if f.coeffs is not None:
        co = {nu: c * (1 - np.exp(1j * nu * h)) ** k for nu, c in f.coeffs.items()}
    return PeriodicFn(diff, co, f"D^{k}_{h:g}{f.label}", f.real)


def _stencil(k: int) -> list[tuple[int, int]]:
    return [(nu, (-1) ** nu * comb(k, nu, exact=True)) for nu in range(k + 1)]


def _dense_coeffs(f: PeriodicFn, grid: UniformGrid) -> np.ndarray | None:
    """Dense coefficient row for -B..B when f is band-limited and the grid resolves it."""
    bw = f.bandwidth
    if f.coeffs is None or bw is None or 2 * bw + 1 > grid.size:
        return None
    c = np.zeros(2 * bw + 1, dtype=complex)
    for nu, v in f.coeffs.items():
        c[nu + bw] = v
    return c


def difference_norms(f, steps, k: int, spec, grid: UniformGrid | None = None) -> np.ndarray:
    """||Delta_s^k f||_p for every step s in ``steps`` (vectorised)."""
    f = as_fn(f)
    spec = as_spec(spec)
    steps = np.atleast_1d(np.asarray(steps, dtype=float))
    if spec.p == 2 and f.coeffs is not None:
        nus = np.array(list(f.coeffs), dtype=float)
        w = np.abs(np.array(list(f.coeffs.values()))) ** 2
        sym = np.abs(difference_multiplier(nus, steps, 1)) ** (2 * k)
        return np.sqrt(sym @ w)
    grid = _default_grid(f, grid)
    x = grid.nodes
    out = np.empty(steps.size)
    chunk = max(1, _CHUNK // x.size)
    c = _dense_coeffs(f, grid)
    if c is not None:
        freqs = np.arange(c.size) - (c.size - 1) // 2
        for lo in range(0, steps.size, chunk):
            m = difference_multiplier(freqs, steps[lo:lo + chunk], k)
            vals = sample_coeffs(m * c[None, :], grid.size)
            out[lo:lo + chunk] = lp_norm_rows(vals.real if f.real else vals, spec)
        return out
    for lo in range(0, steps.size, chunk):
        s = steps[lo:lo + chunk, None]
        acc = sum(w * f(x[None, :] + nu * s) for nu, w in _stencil(k))
        check_finite(acc)
        out[lo:lo + chunk] = lp_norm_rows(acc, spec)
    return out


def omega_profile(f, k: int, spec, grid: UniformGrid | None = None, hgrid: HGrid = DEFAULT_HGRID,
                  t_max: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(hs, omega_k(f, hs)) on the shared grid; a running max of difference norms."""
    hs = hgrid.values if t_max is None else hgrid.upto(t_max)
    d = difference_norms(f, hs, k, spec, grid)
    return hs, np.maximum.accumulate(d)


def omega(f, k: int, t: float, spec, grid: UniformGrid | None = None,
          hgrid: HGrid = DEFAULT_HGRID) -> float:
    """sup over grid steps delta <= t of ||Delta_delta^k f||_p."""
    if t <= 0:
        raise ValueError("t must be positive")
    hgrid.upto(t)
    hs, om = omega_profile(f, k, spec, grid, hgrid, t)
    return float(om[-1])


def theta_sweep(f, k: int, alpha: float, delta: float, spec, grid: UniformGrid | None = None,
                hgrid: HGrid = DEFAULT_HGRID) -> HSweep:
    if delta <= 0 or alpha <= 0:
        raise ValueError("need delta > 0 and alpha > 0")
    hs, om = omega_profile(f, k, spec, grid, hgrid, delta)
    return _sweep(hs, om / hs ** alpha)


def theta(f, k: int, alpha: float, delta: float, spec, grid: UniformGrid | None = None,
          hgrid: HGrid = DEFAULT_HGRID) -> float:
    """sup_{0<h<=delta} omega_k(f, h)_p / h^alpha on the shared grid."""
    return theta_sweep(f, k, alpha, delta, spec, grid, hgrid).sup


def psi_matrix(f, k: int, r: int, spec, delta: float, grid: UniformGrid | None = None,
               hgrid: HGrid = DEFAULT_HGRID, h_upto: float | None = None
               ) -> tuple[np.ndarray, np.ndarray]:
    """P[i, j] = ||Delta_{s_j}^k Delta_{h_i}^r f||_p for grid s_j <= delta.

    The outer steps h_i run over grid points <= ``h_upto`` (default ``delta``);
    the returned step array is the outer one, and the inner steps are its
    first columns.
    """
    f = as_fn(f)
    spec = as_spec(spec)
    hs_out = hgrid.upto(delta if h_upto is None else max(h_upto, delta))
    hs = hgrid.upto(delta)
    if spec.p == 2 and f.coeffs is not None:
        nus = np.array(list(f.coeffs), dtype=float)
        w = np.abs(np.array(list(f.coeffs.values()))) ** 2
        base_out = np.abs(difference_multiplier(nus, hs_out, 1)) ** 2
        base = np.abs(difference_multiplier(nus, hs, 1)) ** 2
        P2 = (base_out ** r * w) @ (base ** k).T
        return hs_out, np.sqrt(np.maximum(P2, 0.0))
    grid = _default_grid(f, grid)
    x = grid.nodes
    P = np.empty((hs_out.size, hs.size))
    c = _dense_coeffs(f, grid)
    if c is not None:
        freqs = np.arange(c.size) - (c.size - 1) // 2
        inner_m = difference_multiplier(freqs, hs, k)
        for i, h in enumerate(hs_out):
            row = c * difference_multiplier(freqs, np.array([h]), r)[0]
            vals = sample_coeffs(inner_m * row[None, :], grid.size)
            P[i] = lp_norm_rows(vals.real if f.real else vals, spec)
        return hs_out, P
    outer = _stencil(r)
    inner = _stencil(k)
    for i, h in enumerate(hs_out):
        acc = 0.0
        for nu, wr in outer:
            for mu, wk in inner:
                acc = acc + (wr * wk) * f(x[None, :] + nu * h + mu * hs[:, None])
        P[i] = lp_norm_rows(acc, spec)
    return hs_out, P


def psi_profile(f, k: int, r: int, alpha: float, spec, delta_max: float,
                grid: UniformGrid | None = None, hgrid: HGrid = DEFAULT_HGRID
                ) -> tuple[np.ndarray, np.ndarray]:
    """psi_{k,r,alpha}(f, delta) for every grid delta <= delta_max."""
    hs, P = psi_matrix(f, k, r, spec, delta_max, grid, hgrid)
    Q = np.maximum.accumulate(P, axis=1) / hs[:, None] ** alpha  # Q[i, m]: best s_j <= delta_m
    m = hs.size
    out = np.empty(m)
    for j in range(m):
        out[j] = Q[:j + 1, j].max()
    return hs, out


def psi(f, k: int, r: int, alpha: float, delta: float, spec, grid: UniformGrid | None = None,
        hgrid: HGrid = DEFAULT_HGRID) -> float:
    """sup_{0<h<=delta} omega_k(Delta_h^r f, delta)_p / h^alpha on the shared grid."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not 0 < alpha <= r:
        raise ValueError("need 0 < alpha <= r")
    hs, P = psi_matrix(f, k, r, spec, delta, grid, hgrid)
    return float((P.max(axis=1) / hs ** alpha).max())


def holder_modulus(f, k: int, hs_spec: HolderSpec, delta: float,
                   grid: UniformGrid | None = None) -> float:
    """w(f, delta)_H = omega_k(f, delta)_p + sup_h omega_k(Delta_h^r f, delta)_p / h^alpha.

    The sup runs over the whole h-grid of ``hs_spec``.
    """
    hg = hs_spec.hgrid
    hs, P = psi_matrix(f, k, hs_spec.r, hs_spec.p, delta, grid, hg, h_upto=hg.h_max)
    return omega(f, k, delta, hs_spec.p, grid, hg) + float((P.max(axis=1) / hs ** hs_spec.alpha).max())


def holder_seminorm_sweep(f, hs_spec: HolderSpec, grid: UniformGrid | None = None) -> HSweep:
    f = as_fn(f)
    hg = hs_spec.hgrid
    hs = hg.values
    d = difference_norms(f, hs, hs_spec.r, hs_spec.p, grid)
    p = hs_spec.p
    tail = TWO_PI ** (-hs_spec.alpha) * 2 ** (hs_spec.r / p.p1) * fn_norm(f, p, grid)
    return _sweep(hs, d / hs ** hs_spec.alpha, tail)


def holder_seminorm(f, hs_spec: HolderSpec, grid: UniformGrid | None = None) -> float:
    """sup_{h_min<h<=h_max} ||Delta_h^r f||_p / h^alpha."""
    return holder_seminorm_sweep(f, hs_spec, grid).sup


def holder_norm(f, hs_spec: HolderSpec, grid: UniformGrid | None = None) -> float:
    return fn_norm(f, hs_spec.p, grid) + holder_seminorm(f, hs_spec, grid)


def averaged_lp_norm(F, spec, x_grid: UniformGrid | None = None,
                     lam_grid: UniformGrid | None = None) -> float:
    """||  ||F(x, lam)||_{p; x}  ||_{p; lam}.

    ``F`` is either a callable of (x, lam) that broadcasts, or an array with
    one row of x-samples per lambda node.
    """
    spec = as_spec(spec)
    if callable(F):
        x = (x_grid or UniformGrid(1024)).nodes
        lam = (lam_grid or UniformGrid(64)).nodes
        vals = np.asarray(F(x[None, :], lam[:, None]))
        vals = np.broadcast_to(vals, (lam.size, x.size))
    else:
        vals = np.atleast_2d(np.asarray(F))
    check_finite(vals)
    return float(lp_norm_rows(lp_norm_rows(vals, spec), spec))


@dataclass(frozen=True)
class FamilyError:
    total: float
    lp: float
    seminorm: float
    sweep: HSweep = field(repr=False)

    def __float__(self):
        return self.total


def family_holder_parts(f, means: Sequence[TrigPoly], hs_spec: HolderSpec,
                        grid: UniformGrid | None = None) -> FamilyError:
    """Averaged Hölder error of a family of polynomial approximants (one per lambda node)."""
    f = as_fn(f)
    spec = hs_spec.p
    n = max(T.degree for T in means)
    grid = grid or UniformGrid(max(_default_grid(f, None).size, default_grid_size(n)))
    M = grid.size
    x = grid.nodes
    hs = hs_spec.hgrid.values
    f0 = sample(f, grid)
    Fh = np.empty((hs.size, M), dtype=complex if not f.real else float)
    for i, h in enumerate(hs):
        Fh[i] = sum(w * f(x + nu * h) for nu, w in _stencil(hs_spec.r))
    freqs = np.arange(-n, n + 1)
    mult = difference_multiplier(freqs, hs, hs_spec.r)
    lp_parts = np.empty(len(means))
    diff_parts = np.empty((len(means), hs.size))
    for j, T in enumerate(means):
        c = T.padded(n).coeffs
        tv = sample_coeffs(c[None, :], M)[0]
        dv = sample_coeffs(c[None, :] * mult, M)
        if f.real and T.is_real:
            tv, dv = tv.real, dv.real
        lp_parts[j] = lp_norm_rows(f0 - tv, spec)
        diff_parts[j] = lp_norm_rows(Fh - dv, spec)
    lp_val = float(lp_norm_rows(lp_parts, spec))
    ratios = lp_norm_rows(diff_parts.T, spec) / hs ** hs_spec.alpha
    sw = _sweep(hs, ratios)
    return FamilyError(lp_val + sw.sup, lp_val, sw.sup, sw)


def family_holder_error(f, means: Sequence[TrigPoly], hs_spec: HolderSpec,
                        grid: UniformGrid | None = None) -> float:
    """||f - L_{n,lam} f||_pbar + sup_h ||Delta_h^r (f - L_{n,lam} f)||_pbar / h^alpha."""
    return family_holder_parts(f, means, hs_spec, grid).total
