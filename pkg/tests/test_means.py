import math

import numpy as np
import pytest

from approxlab.means import (family_coeffs, family_mean, family_means, family_nodes, fourier_mean, kernel_catalog,
                             operator_norm, require_bounded, tilde)
from approxlab.moduli import finite_difference
from approxlab.spectral import PeriodicFn, TrigPoly, UniformGrid
from approxlab.testfns import constant, lacunary, random_trig_poly, triangle_wave

KERNELS = ("dirichlet", "fejer", "vp")


def _exp(mu):
    return PeriodicFn(lambda x: np.exp(1j * mu * np.asarray(x)), {mu: 1.0}, f"e{mu}", False)


def test_kernel_coefficients():
    assert np.allclose(kernel_catalog("fejer", 1).coeffs, [0.5, 1, 0.5])
    assert np.allclose(kernel_catalog("vp", 4).coeffs, [1 / 3, 2 / 3, 1, 1, 1, 1, 1, 2 / 3, 1 / 3])
    assert np.allclose(kernel_catalog("dirichlet", 3).coeffs, 1)
    for name in KERNELS:
        K = kernel_catalog(name, 5)
        assert K.coeffs[5] == 1
        assert abs(np.mean(K(UniformGrid(64).nodes)) - 1) < 1e-12


def test_unknown_kernel():
    with pytest.raises(ValueError):
        kernel_catalog("jackson", 3)


def test_fourier_mean_examples():
    for name in KERNELS:
        assert np.allclose(fourier_mean(constant().fn, kernel_catalog(name, 3)).coeffs, [0, 0, 0, 1, 0, 0, 0])
    K = kernel_catalog("fejer", 4)
    for nu in range(-4, 5):
        L = fourier_mean(_exp(nu), K)
        assert abs(L.coeff(nu) - (1 - abs(nu) / 5)) < 1e-14


def test_multiplier_commutes_with_differences():
    f = lacunary(0.5, 6).fn
    K = kernel_catalog("vp", 8)
    h = 0.37
    lhs = finite_difference(fourier_mean(f, K).to_fn(), h, 2)
    rhs = fourier_mean(finite_difference(f, h, 2), K).to_fn()
    x = UniformGrid(128).nodes
    assert np.max(np.abs(lhs(x) - rhs(x))) < 1e-10


def test_family_mean_reproduces_fourier_mean_on_polynomials(rng):
    for _ in range(20):
        n = int(rng.integers(1, 8))
        T = random_trig_poly(n, rng, real=bool(rng.integers(2)))
        K = kernel_catalog(KERNELS[int(rng.integers(3))], n)
        lam = float(rng.uniform(0, 2 * math.pi))
        assert np.max(np.abs(family_mean(T.to_fn(), K, lam).coeffs - fourier_mean(T.to_fn(), K).coeffs)) < 1e-10


def test_family_mean_aliasing_term():
    n = 2
    mu = 4 * n + 1
    K = kernel_catalog("fejer", n)
    lam = 0.3
    got = family_mean(_exp(mu), K, lam)
    # direct sum of f(t_j + lam) K(x - t_j - lam)
    t = family_nodes(n) + lam
    x = np.linspace(0, 6, 7)
    direct = np.array([np.mean(np.exp(1j * mu * t) * K(xi - t)) for xi in x])
    assert np.max(np.abs(got(x) - direct)) < 1e-10
    assert family_mean(constant().fn, K, 1.1).coeff(0) == pytest.approx(1)


def test_family_means_match_single():
    f = triangle_wave().fn
    K = kernel_catalog("vp", 3)
    grid = UniformGrid(8)
    rows = family_means(f, K, grid)
    for T, lam in zip(rows, grid.nodes):
        assert np.allclose(T.coeffs, family_mean(f, K, lam).coeffs, atol=1e-14)
    assert family_coeffs(f, K, grid.nodes).shape == (8, 7)


def test_tilde_examples():
    n = 3
    lam = np.linspace(0, 6, 11)
    assert np.allclose(tilde(_exp(5), n)(lam), 0, atol=1e-14)
    assert np.allclose(tilde(_exp(13), n)(lam), np.exp(13j * lam))
    assert np.allclose(tilde(constant().fn, n)(lam), 1)
    assert tilde(_exp(13), n).coeffs == {13: 1.0}
    with pytest.raises(ValueError):
        tilde(constant().fn, 0)


def test_operator_norms():
    f1 = operator_norm(kernel_catalog("fejer", 6), 1)
    assert f1.exact and abs(f1.value - 1) < 1e-6
    assert abs(operator_norm(kernel_catalog("vp", 6), 2).value - 1) < 1e-12
    vals = [operator_norm(kernel_catalog("dirichlet", n), 1).value for n in (4, 8, 16)]
    assert vals[0] < vals[1] < vals[2]
    assert vals[2] == pytest.approx(4 / math.pi ** 2 * math.log(16) + 1.27, abs=0.1)


def test_dirichlet_family_refused():
    with pytest.raises(ValueError, match="bounded"):
        require_bounded(kernel_catalog("dirichlet", 4))
    require_bounded(kernel_catalog("fejer", 4))
