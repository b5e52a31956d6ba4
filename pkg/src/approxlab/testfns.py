"""Catalog of test functions with exact evaluators and known smoothness rates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import TWO_PI, PeriodicFn, TrigPoly


@dataclass(frozen=True)
class KnownRate:
    """omega_k(f, h)_p = O(h^exponent) as h -> 0, with where the claim comes from."""

    p: float
    k: int
    exponent: float
    source: str


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    fn: PeriodicFn
    known_rates: tuple[KnownRate, ...] = ()
    notes: str = ""
    continuous: bool = True
    tail_bound: float = 0.0
    min_grid: int = 0
    params: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.fn.label

    def best_rate(self, p: float) -> float | None:
        """Largest listed modulus exponent at p: the decay rate of E_n when sharp."""
        vals = [kr.exponent for kr in self.known_rates
                if kr.p == p or (math.isinf(kr.p) and math.isinf(p))]
        return max(vals) if vals else None

    def saturated(self, p: float, k: int) -> bool:
        """True when omega_k decays slower than a higher-order modulus of the same f."""
        rk, best = self.rate(p, k), self.best_rate(p)
        return rk is not None and best is not None and rk < best - 1e-12

    def rate(self, p: float, k: int) -> float | None:
        for kr in self.known_rates:
            if kr.k == k and (kr.p == p or (math.isinf(kr.p) and math.isinf(p))):
                return kr.exponent
        return None


def _wrap(x):
    return np.mod(np.asarray(x, dtype=float), TWO_PI)


def _odd_harmonic_closed(r: int):
    if r == 1:
        return lambda x: (math.pi / 4) * np.sign(np.sin(np.asarray(x, dtype=float)))
    if r == 2:
        def f2(x):
            y = _wrap(x)
            y = np.where(y > math.pi, y - TWO_PI, y)  # [-pi, pi]
            return -(math.pi / 8) * (math.pi - 2 * np.abs(y))
        return f2
    if r == 3:
        def f3(x):
            y = _wrap(x)
            y = np.where(y > math.pi, y - TWO_PI, y)
            return -(math.pi / 8) * y * (math.pi - np.abs(y))
        return f3
    return None


RATE_PS = (0.5, 1.0, 2.0, math.inf)
RATE_KS = (1, 2, 3)


def _jump_rates(s: int, source: str) -> tuple[KnownRate, ...]:
    """Rates for a piecewise-smooth f whose (s-1)-th derivative jumps.

    omega_k(f, h)_p ~ h^k for k < s; otherwise h^(s-1+1/p), capped at h^k
    when p >= 1 (no such cap exists for p < 1).
    """
    out = []
    for p in RATE_PS:
        for k in RATE_KS:
            if k < s:
                e = float(k)
            else:
                e = s - 1 + (0.0 if math.isinf(p) else 1 / p)
                if p >= 1:
                    e = min(e, float(k))
            out.append(KnownRate(p, k, e, source))
    return tuple(out)


def odd_harmonic_tail(r: int, N: int) -> float:
    """Bound for sum_{nu >= N} (2 nu + 1)^(-r) by integral comparison."""
    if r <= 1:
        return math.inf
    a = 2 * N + 1
    return a ** (-r) + a ** (1 - r) / (2 * (r - 1))


def odd_harmonic_series(r: int, N: int):
    nus = 2 * np.arange(N) + 1.0
    phase = math.pi * (r - 1) / 2

    def ev(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for m in nus:
            out += np.sin(m * x - phase) / m ** r
        return out
    return ev


def odd_harmonic(r: int = 1, N: int | None = None) -> CatalogEntry:
    """sum_{nu>=0} sin((2nu+1)x - pi(r-1)/2) / (2nu+1)^r.

    With ``N=None`` and r <= 3 the closed form is used (r=1 is the square
    wave pi/4 sgn(sin x)); otherwise the first N terms are summed.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    closed = _odd_harmonic_closed(r) if N is None else None
    if closed is not None:
        ev, tail, label = closed, 0.0, f"odd_harmonic{r}"
        coeffs = None
    else:
        if N is None:
            N = 1
            while odd_harmonic_tail(r, N) > 1e-9:
                N *= 2
        if N < 1:
            raise ValueError("N must be >= 1")
        ev, tail, label = odd_harmonic_series(r, N), odd_harmonic_tail(r, N), f"odd_harmonic{r}_N{N}"
        phase = math.pi * (r - 1) / 2
        coeffs = {}
        for nu in range(N):
            m = 2 * nu + 1
            # sin(m x - phase) = (e^{i(mx - phase)} - e^{-i(mx - phase)}) / 2i
            coeffs[m] = np.exp(-1j * phase) / (2j) / m ** r
            coeffs[-m] = -np.exp(1j * phase) / (2j) / m ** r
    rates = _jump_rates(r, "odd-harmonic series: omega_r = O(h^(r-1+1/p)); lower k by smoothness")
    return CatalogEntry(PeriodicFn(ev, coeffs, label, True), rates,
                        "odd-harmonic series with phase -pi(r-1)/2", continuous=r >= 2,
                        tail_bound=tail, params={"r": r, "N": N})


def triangle_wave() -> CatalogEntry:
    """x on [0, pi), 2 pi - x on [pi, 2 pi), extended periodically."""
    def ev(x):
        y = _wrap(x)
        return math.pi - np.abs(y - math.pi)

    rates = _jump_rates(2, "piecewise linear, slope +-1, two kinks per period")
    return CatalogEntry(PeriodicFn(ev, None, "triangle", True), rates,
                        "triangle wave; f(0) = 0, f(pi) = pi")


def g_staircase(n: int, x):
    """Staircase with ramps of width 1/n^2 on [0, 1], mirrored as 1 - g(x - 1) on (1, 2]."""
    x = np.asarray(x, dtype=float)
    y = np.where(x > 1.0, x - 1.0, x)
    k = np.minimum(np.floor(y * n), n - 1)
    ramp_start = (k + 1) / n - 1.0 / n ** 2
    up = np.where(y < ramp_start, k / n, k / n + (y - (k + 1) / n + 1.0 / n ** 2) * n)
    return np.where(x > 1.0, 1.0 - up, up)


def ramp_phi(n: int) -> CatalogEntry:
    """phi_n(x) = pi g_n(x / pi) on [0, 2 pi], extended periodically."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def ev(x):
        y = _wrap(x)
        return math.pi * g_staircase(n, y / math.pi)

    rates = tuple(KnownRate(p, 1, 1.0, "Lipschitz, slope n on ramps") for p in (1.0, 2.0, math.inf))
    return CatalogEntry(PeriodicFn(ev, None, f"ramp_phi{n}", True), rates,
                        "staircase with steep ramps approximating the triangle wave",
                        params={"n": n})


def lacunary(gamma: float = 0.5, terms: int = 8) -> CatalogEntry:
    """sum_{nu=0}^{terms} 2^{-gamma nu} cos(2^nu x)."""
    coeffs = {}
    for nu in range(terms + 1):
        a = 2.0 ** (-gamma * nu)
        coeffs[2 ** nu] = a / 2
        coeffs[-(2 ** nu)] = a / 2
    freqs = np.array([2.0 ** nu for nu in range(terms + 1)])
    amps = 2.0 ** (-gamma * np.arange(terms + 1))

    def ev(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        for a, m in zip(amps, freqs):
            out += a * np.cos(m * x)
        return out

    rates = tuple(KnownRate(p, k, min(gamma, k), "lacunary series, valid for h >= 2^-terms")
                  for p in RATE_PS for k in RATE_KS)
    bw = 2 ** terms
    return CatalogEntry(PeriodicFn(ev, coeffs, f"lacunary{gamma:g}", True), rates,
                        "truncated lacunary cosine series", min_grid=4 * (bw + 1),
                        params={"gamma": gamma, "terms": terms})


def trig(coeffs: dict[int, complex], label: str) -> CatalogEntry:
    T = TrigPoly.from_dict(coeffs)
    fn = T.to_fn()
    fn = PeriodicFn(fn.evaluator, fn.coeffs, label, fn.real)
    return CatalogEntry(fn, (), "trigonometric polynomial", params={"degree": T.degree})


def cos_x() -> CatalogEntry:
    return trig({1: 0.5, -1: 0.5}, "cosx")


def exp_ix() -> CatalogEntry:
    fn = PeriodicFn(lambda x: np.exp(1j * np.asarray(x)), {1: 1.0}, "expix", False)
    return CatalogEntry(fn, (), "unimodular exponential")


def constant(c: float = 1.0) -> CatalogEntry:
    return CatalogEntry(PeriodicFn.constant(c, "const"), (), "constant")


def smooth_catalog() -> list[CatalogEntry]:
    return [
        cos_x(),
        trig({1: 0.5, -1: 0.5, 3: 0.5, -3: 0.5}, "cosx_cos3x"),
        trig({2: 0.25 - 0.5j, -2: 0.25 + 0.5j, 5: 0.1, -5: 0.1}, "trig5"),
        lacunary(0.5, 8),
    ]


def random_trig_poly(n: int, rng: np.random.Generator, real: bool = True) -> TrigPoly:
    """Seeded random polynomial with unit-variance coefficients, top coefficient nonzero."""
    if real:
        a = rng.standard_normal(n + 1)
        b = rng.standard_normal(n)
        if n > 0 and abs(a[-1]) + abs(b[-1]) < 1e-3:
            a[-1] = 1.0
        return TrigPoly.from_real(a, b)
    return TrigPoly(rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1))


_BUILDERS = {
    "const": lambda **kw: constant(kw.get("c", 1.0)),
    "cosx": lambda **kw: cos_x(),
    "expix": lambda **kw: exp_ix(),
    "triangle": lambda **kw: triangle_wave(),
    "square": lambda **kw: odd_harmonic(1),
    "odd_harmonic": lambda **kw: odd_harmonic(int(kw.get("r", 1)), kw.get("N")),
    "ramp_phi": lambda **kw: ramp_phi(int(kw.get("n", 8))),
    "lacunary": lambda **kw: lacunary(float(kw.get("gamma", 0.5)), int(kw.get("terms", 8))),
}

CATALOG_NAMES = tuple(_BUILDERS)


def get_entry(name: str, **params) -> CatalogEntry:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return builder(**params)
