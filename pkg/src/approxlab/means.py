"""Kernel Fourier means, sampled family means and their operator norms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moduli import as_spec, lp_norm_rows
from .spectral import (TWO_PI, PeriodicFn, TrigPoly, UniformGrid, as_fn, exact_or_grid_coeffs,
                       sample_coeffs)

KERNEL_NAMES = ("dirichlet", "fejer", "vp")
BOUNDED_KERNELS = ("fejer", "vp")


@dataclass(frozen=True, eq=False)
class Kernel:
    """K_n(x) = sum_{|nu|<=n} a_nu e^{i nu x} with a_0 = 1, acting as a Fourier multiplier."""

    name: str
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.coeffs, dtype=float).copy()
        if a.size != 2 * self.degree + 1:
            raise ValueError("kernel needs 2n+1 coefficients")
        if a[self.degree] != 1.0:
            raise ValueError("kernel must satisfy a_0 = 1")
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def freqs(self) -> np.ndarray:
        return np.arange(-self.degree, self.degree + 1)

    def __call__(self, x) -> np.ndarray:
        return TrigPoly(self.coeffs)(x)

    @property
    def bounded_family(self) -> bool:
        return self.name in BOUNDED_KERNELS


def kernel_catalog(name: str, n: int) -> Kernel:
    if n < 1:
        raise ValueError("kernel degree must be >= 1")
    nu = np.abs(np.arange(-n, n + 1)).astype(float)
    if name == "dirichlet":
        a = np.ones_like(nu)
    elif name == "fejer":
        a = 1.0 - nu / (n + 1)
    elif name == "vp":
        m = n // 2
        a = np.where(nu <= m, 1.0, (n + 1 - nu) / (n + 1 - m))
    else:
        raise ValueError(f"unknown kernel {name!r}; choose from {', '.join(KERNEL_NAMES)}")
    a[n] = 1.0
    return Kernel(name, n, a)


def require_bounded(K: Kernel) -> None:
    """Refuse kernels whose means are not uniformly bounded in L_1 / L_inf."""
    if not K.bounded_family:
        raise ValueError(f"kernel {K.name!r} does not generate a bounded family; "
                         f"use one of {', '.join(BOUNDED_KERNELS)}")


def fourier_mean(f, K: Kernel, grid: UniformGrid | None = None) -> TrigPoly:
    """Multiplier form of the convolution mean: coefficients a_nu c_nu(f), |nu| <= n."""
    c = exact_or_grid_coeffs(f, K.degree, grid)
    return TrigPoly(c.coeffs * K.coeffs, f"L_{K.name}{K.degree}")


def family_nodes(n: int) -> np.ndarray:
    return TWO_PI * np.arange(4 * n + 1) / (4 * n + 1)


def family_coeffs(f, K: Kernel, lams) -> np.ndarray:
    """Coefficient rows of L_{n,lam} f for each lam: a_nu/(4n+1) sum_j f(t_j+lam) e^{-i nu (t_j+lam)}."""
    f = as_fn(f)
    n = K.degree
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    pts = family_nodes(n)[None, :] + lams[:, None]
    vals = np.asarray(f(pts), dtype=complex)
    E = np.exp(-1j * pts[:, :, None] * K.freqs[None, None, :])
    c = np.einsum("lj,ljk->lk", vals, E) / (4 * n + 1)
    return c * K.coeffs


def family_mean(f, K: Kernel, lam: float) -> TrigPoly:
    """L_{n,lam}(f, x) = 1/(4n+1) sum_{j=0}^{4n} f(t_j + lam) K_n(x - t_j - lam)."""
    c = family_coeffs(f, K, [lam])[0]
    if as_fn(f).real:
        c = 0.5 * (c + np.conj(c[::-1]))  # exact for real f and real-even kernels; removes rounding
    return TrigPoly(c, f"L_{K.name}{K.degree},{lam:g}")


def family_means(f, K: Kernel, lam_grid: UniformGrid) -> list[TrigPoly]:
    rows = family_coeffs(f, K, lam_grid.nodes)
    if as_fn(f).real:
        rows = 0.5 * (rows + np.conj(rows[:, ::-1]))
    return [TrigPoly(c) for c in rows]


def tilde(f, n: int) -> PeriodicFn:
    """lam -> 1/(4n+1) sum_{j=0}^{4n} f(t_j + lam)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    f = as_fn(f)
    t = family_nodes(n)
    m = 4 * n + 1

    def ev(lam):
        lam = np.asarray(lam, dtype=float)
        return np.mean(f(lam[..., None] + t), axis=-1)

    co = None
    if f.coeffs is not None:
        co = {nu: c for nu, c in f.coeffs.items() if nu % m == 0}
    return PeriodicFn(ev, co, f"tilde_{n}({f.label})", f.real)


@dataclass(frozen=True)
class NormEstimate:
    value: float
    exact: bool


def operator_norm(K: Kernel, spec, grid: UniformGrid | None = None) -> NormEstimate:
    """L_p -> L_p norm of the convolution mean.

    Exact for p in {1, 2, inf}; for other p a lower bound from a probe set.
    """
    spec = as_spec(spec)
    p = spec.p
    n = K.degree
    M = (grid.size if grid else max(4096, 64 * (n + 1)))
    if p == 2:
        return NormEstimate(float(np.max(np.abs(K.coeffs))), True)
    if p == 1 or math.isinf(p):
        vals = sample_coeffs(K.coeffs[None, :], M)[0]
        return NormEstimate(float(np.mean(np.abs(vals))), True)
    best = 0.0
    probes = [np.eye(2 * n + 1)[i] for i in range(2 * n + 1)]
    for m in sorted({n, 2 * n, 4 * n, 8 * n}):
        probes.append(kernel_catalog("fejer", m).coeffs)
    for c in probes:
        m = (c.size - 1) // 2
        fv = sample_coeffs(c[None, :], M)[0]
        nf = float(lp_norm_rows(fv, spec))
        cc = np.zeros(2 * n + 1, dtype=complex)
        k = min(m, n)
        cc[n - k:n + k + 1] = c[m - k:m + k + 1]
        lv = sample_coeffs((cc * K.coeffs)[None, :], M)[0]
        if nf > 0:
            best = max(best, float(lp_norm_rows(lv, spec)) / nf)
    return NormEstimate(best, False)
