"""Periodic functions, trigonometric polynomials and uniform grids on the torus."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

TWO_PI = 2.0 * math.pi

Evaluator = Callable[[np.ndarray], np.ndarray]


def default_grid_size(n: int = 0) -> int:
    """Working grid size for polynomials of degree up to ``n``."""
    return max(1024, 16 * (n + 1))


@dataclass(frozen=True)
class UniformGrid:
    size: int

    def __post_init__(self):
        if int(self.size) < 1:
            raise ValueError(f"grid size must be >= 1, got {self.size}")
        object.__setattr__(self, "size", int(self.size))

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.size) / self.size

    @classmethod
    def for_degree(cls, n: int) -> "UniformGrid":
        return cls(default_grid_size(n))


def _as_coeff_dict(coeffs) -> dict[int, complex] | None:
    if coeffs is None:
        return None
    if isinstance(coeffs, Mapping):
        items = coeffs.items()
    else:
        items = coeffs
    out: dict[int, complex] = {}
    for nu, c in items:
        out[int(nu)] = out.get(int(nu), 0.0) + complex(c)
    return out


@dataclass(frozen=True, eq=False)
class PeriodicFn:
    """A 2pi-periodic function given by a vectorised evaluator.

    ``coeffs`` optionally carries the exact (finitely supported) spectrum as a
    mapping ``nu -> c_nu``. Operations that preserve exactness (shifts,
    differences, linear combinations) propagate it.
    """

    evaluator: Evaluator
    coeffs: dict[int, complex] | None = None
    label: str = "f"
    real: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeff_dict(self.coeffs))

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)))

    @property
    def bandwidth(self) -> int | None:
        if self.coeffs is None:
            return None
        return max((abs(nu) for nu in self.coeffs), default=0)

    @classmethod
    def from_coeffs(cls, coeffs, label: str = "f") -> "PeriodicFn":
        cd = _as_coeff_dict(coeffs)
        nus = np.array(sorted(cd), dtype=float)
        cs = np.array([cd[int(nu)] for nu in nus], dtype=complex)
        real = all(abs(cd.get(-nu, 0) - np.conj(c)) < 1e-14 for nu, c in cd.items())

        def ev(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros(x.shape, dtype=complex)
            for nu, c in zip(nus, cs):
                out += c * np.exp(1j * nu * x)
            return out.real if real else out

        return cls(ev, cd, label, real)

    @classmethod
    def constant(cls, c: complex = 1.0, label: str = "const") -> "PeriodicFn":
        real = complex(c).imag == 0
        val = complex(c).real if real else complex(c)
        return cls(lambda x: np.full(np.shape(x), val), {0: c}, label, real)

    def shifted(self, h: float) -> "PeriodicFn":
        ev = self.evaluator
        co = None
        if self.coeffs is not None:
            co = {nu: c * np.exp(1j * nu * h) for nu, c in self.coeffs.items()}
        return PeriodicFn(lambda x: ev(np.asarray(x) + h), co, f"{self.label}(.+{h:g})", self.real)

    def scaled(self, a: complex) -> "PeriodicFn":
        ev = self.evaluator
        real = self.real and complex(a).imag == 0
        a_ = complex(a).real if real else complex(a)
        co = None if self.coeffs is None else {nu: a * c for nu, c in self.coeffs.items()}
        return PeriodicFn(lambda x: a_ * ev(x), co, f"{a}*{self.label}", real)

    def __add__(self, other: "PeriodicFn") -> "PeriodicFn":
        other = as_fn(other)
        e1, e2 = self.evaluator, other.evaluator
        co = None
        if self.coeffs is not None and other.coeffs is not None:
            co = dict(self.coeffs)
            for nu, c in other.coeffs.items():
                co[nu] = co.get(nu, 0.0) + c
        return PeriodicFn(lambda x: e1(x) + e2(x), co, f"({self.label}+{other.label})",
                          self.real and other.real)

    def __sub__(self, other: "PeriodicFn") -> "PeriodicFn":
        return self + as_fn(other).scaled(-1.0)


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Trigonometric polynomial sum_{|nu|<=n} c_nu e^{i nu x}; ``coeffs[nu + n] = c_nu``."""

    coeffs: np.ndarray
    label: str = field(default="T", compare=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel().copy()
        if c.size % 2 != 1:
            raise ValueError(f"coefficient vector must have odd length 2n+1, got {c.size}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def freqs(self) -> np.ndarray:
        n = self.degree
        return np.arange(-n, n + 1)

    def coeff(self, nu: int) -> complex:
        n = self.degree
        return complex(self.coeffs[nu + n]) if abs(nu) <= n else 0.0

    @property
    def is_real(self) -> bool:
        return bool(np.allclose(self.coeffs, np.conj(self.coeffs[::-1]), rtol=0, atol=1e-13))

    @classmethod
    def zero(cls, n: int) -> "TrigPoly":
        return cls(np.zeros(2 * n + 1))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex], n: int | None = None) -> "TrigPoly":
        n = max((abs(k) for k in coeffs), default=0) if n is None else n
        c = np.zeros(2 * n + 1, dtype=complex)
        for nu, v in coeffs.items():
            if abs(nu) > n:
                raise ValueError(f"frequency {nu} exceeds degree {n}")
            c[nu + n] += v
        return cls(c)

    @classmethod
    def from_real(cls, a: np.ndarray, b: np.ndarray) -> "TrigPoly":
        """From a_0 + sum_k a_k cos kx + b_k sin kx, with len(a) = n+1, len(b) = n."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        n = a.size - 1
        c = np.zeros(2 * n + 1, dtype=complex)
        c[n] = a[0]
        c[n + 1:] = (a[1:] - 1j * b) / 2
        c[:n] = np.conj(c[n + 1:])[::-1]
        return cls(c)

    def padded(self, n: int) -> "TrigPoly":
        if n < self.degree:
            raise ValueError("cannot pad to a smaller degree")
        k = n - self.degree
        return TrigPoly(np.pad(self.coeffs, (k, k)), self.label)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for nu, c in zip(self.freqs, self.coeffs):
            if c != 0:
                out += c * np.exp(1j * nu * x)
        return out.real if self.is_real else out

    def sample(self, M: int, shift: float = 0.0) -> np.ndarray:
        """Values at x_j + shift, x_j = 2 pi j / M, via one inverse FFT."""
        vals = sample_coeffs(self.coeffs[None, :], M, shift)[0]
        return vals.real if self.is_real else vals

    def to_fn(self) -> PeriodicFn:
        return PeriodicFn(self.__call__, dict(zip(self.freqs.tolist(), self.coeffs)), self.label,
                          self.is_real)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.degree, other.degree)
        return TrigPoly(self.padded(n).coeffs + other.padded(n).coeffs)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.degree, other.degree)
        return TrigPoly(self.padded(n).coeffs - other.padded(n).coeffs)

    def __mul__(self, a: complex) -> "TrigPoly":
        return TrigPoly(self.coeffs * a)

    __rmul__ = __mul__

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree, "re": self.coeffs.real.tolist(),
                           "im": self.coeffs.imag.tolist()})

    @classmethod
    def from_json(cls, s: str) -> "TrigPoly":
        d = json.loads(s)
        c = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        if c.size != 2 * int(d["degree"]) + 1:
            raise ValueError("coefficient length does not match degree")
        return cls(c)


def as_fn(f) -> PeriodicFn:
    if isinstance(f, PeriodicFn):
        return f
    if isinstance(f, TrigPoly):
        return f.to_fn()
    if callable(f):
        return PeriodicFn(f, None, getattr(f, "__name__", "f"), True)
    raise TypeError(f"cannot interpret {type(f).__name__} as a periodic function")


def sample_coeffs(coeffs: np.ndarray, M: int, shift: float = 0.0) -> np.ndarray:
    """Evaluate a batch of coefficient rows (shape (B, 2n+1)) on the M-point grid."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
    n = (coeffs.shape[1] - 1) // 2
    nus = np.arange(-n, n + 1)
    if shift:
        coeffs = coeffs * np.exp(1j * nus * shift)
    if M >= 2 * n + 1:
        buf = np.zeros((coeffs.shape[0], M), dtype=complex)
        buf[:, nus % M] = coeffs
        return np.fft.ifft(buf, axis=1) * M
    x = TWO_PI * np.arange(M) / M
    return coeffs @ np.exp(1j * np.outer(nus, x))


def sample(f, grid: UniformGrid) -> np.ndarray:
    """Values of ``f`` at the grid nodes; raises on non-finite output."""
    f = as_fn(f)
    x = grid.nodes
    vals = np.asarray(f(x))
    check_finite(vals, x)
    return vals


def check_finite(vals: np.ndarray, x: np.ndarray | None = None) -> None:
    bad = ~np.isfinite(vals)
    if np.any(bad):
        j = int(np.flatnonzero(bad.ravel())[0])
        where = f" at x={np.ravel(x)[j]!r}" if x is not None and np.size(x) == np.size(vals) else ""
        raise FloatingPointError(f"non-finite value at node {j}{where}")


def spectral_coeffs(f, n: int, grid: UniformGrid | None = None) -> TrigPoly:
    """Discrete Fourier coefficients c_nu, |nu| <= n, from the grid samples."""
    grid = grid or UniformGrid.for_degree(n)
    M = grid.size
    if M < 4 * (n + 1):
        raise ValueError(f"grid size {M} too small for degree {n}: need M >= {4 * (n + 1)}")
    vals = sample(f, grid)
    c = np.fft.fft(vals) / M
    nus = np.arange(-n, n + 1)
    return TrigPoly(c[nus % M])


def exact_or_grid_coeffs(f, n: int, grid: UniformGrid | None = None) -> TrigPoly:
    """Coefficients up to degree n, exact when ``f`` carries a spectrum."""
    f = as_fn(f)
    if f.coeffs is not None:
        return TrigPoly.from_dict({k: v for k, v in f.coeffs.items() if abs(k) <= n}, n)
    return spectral_coeffs(f, n, grid)


def poly_derivative(T: TrigPoly, order: int) -> TrigPoly:
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    return TrigPoly(T.coeffs * (1j * T.freqs) ** order)


def poly_eval_shifted(T: TrigPoly, x, h: float = 0.0):
    """Exact value of T at x + h from the coefficients."""
    x = np.asarray(x, dtype=float) + h
    vals = np.exp(1j * np.multiply.outer(x, T.freqs)) @ T.coeffs
    return vals.item() if np.ndim(vals) == 0 else vals


def difference_multiplier(freqs: np.ndarray, h, k: int) -> np.ndarray:
    """Symbol of the k-th forward difference with step h: (1 - e^{i nu h})^k."""
    return (1.0 - np.exp(1j * np.multiply.outer(np.asarray(h, dtype=float), freqs))) ** k
