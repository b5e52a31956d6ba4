import math

import numpy as np
import pytest

from approxlab.moduli import (DEFAULT_HGRID, HGrid, HolderSpec, as_spec, averaged_lp_norm, difference_norms,
                              family_holder_error, finite_difference, fn_norm, holder_modulus, holder_norm,
                              holder_seminorm, holder_seminorm_sweep, lp_norm, omega, psi, psi_matrix, theta,
                              theta_sweep)
from approxlab.spectral import PeriodicFn, TrigPoly, UniformGrid
from approxlab.testfns import constant, cos_x, exp_ix, lacunary, odd_harmonic, random_trig_poly, triangle_wave

from conftest import PS

SIN = PeriodicFn(np.sin, {1: -0.5j, -1: 0.5j}, "sin", True)


@pytest.mark.parametrize("p", PS)
def test_norm_unimodular(p):
    assert abs(fn_norm(exp_ix().fn, p) - 1) < 1e-12


def test_norm_cos_examples():
    assert abs(fn_norm(cos_x().fn, 2) - 1 / math.sqrt(2)) < 1e-12
    assert abs(fn_norm(cos_x().fn, 1) - 2 / math.pi) < 1e-5


def test_quasinorm_spec_rejects_bad_p():
    with pytest.raises(ValueError):
        as_spec(0)
    assert as_spec(0.5).p1 == 0.5 and as_spec(3).p1 == 1 and as_spec(math.inf).is_inf


def test_lp_norm_reports_non_finite():
    with pytest.raises(FloatingPointError):
        lp_norm(np.array([1.0, np.nan]), 1)


@pytest.mark.parametrize("p", PS)
def test_difference_of_constant_is_zero(p):
    assert np.all(difference_norms(constant(2.0).fn, DEFAULT_HGRID.values, 2, p) == 0)


@pytest.mark.parametrize("p", PS)
@pytest.mark.parametrize("mu,k", [(1, 1), (3, 2), (-5, 3)])
def test_difference_of_exponential_closed_form(p, mu, k):
    f = PeriodicFn(lambda x: np.exp(1j * mu * np.asarray(x)), None, "e", False)
    hs = np.array([0.01, 0.2, 1.3])
    got = difference_norms(f, hs, k, p, UniformGrid(256))
    assert np.allclose(got, (2 * np.abs(np.sin(mu * hs / 2))) ** k, atol=1e-10)


def test_difference_of_sine_antiperiodic():
    d = finite_difference(SIN, math.pi, 1)
    x = np.linspace(0, 6, 13)
    assert np.allclose(d(x), 2 * np.sin(x))


@pytest.mark.parametrize("p", PS)
def test_fast_path_agrees_with_pointwise(p, rng):
    T = random_trig_poly(6, rng)
    slow = PeriodicFn(T, None, "T", True)
    hs = DEFAULT_HGRID.values[::16]
    a = difference_norms(T.to_fn(), hs, 2, p, UniformGrid(512))
    b = difference_norms(slow, hs, 2, p, UniformGrid(512))
    assert np.allclose(a, b, rtol=1e-10, atol=1e-12)


def test_omega_examples():
    assert omega(constant().fn, 2, 0.5, 1) == 0
    for t in (0.01, 0.5, 2.0, math.pi):
        assert abs(omega(SIN, 1, t, 2) - math.sqrt(2) * math.sin(DEFAULT_HGRID.upto(t)[-1] / 2)) < 1e-12
    with pytest.raises(ValueError):
        omega(SIN, 1, DEFAULT_HGRID.h_min / 2, 2)


def test_theta_examples():
    th = theta_sweep(exp_ix().fn, 1, 1.0, 0.5, 2)
    assert 1 - 1e-6 < th.sup <= 1 and th.at_lower_edge
    assert theta(constant().fn, 2, 0.5, 0.3, 1) == 0


def test_psi_examples(rng):
    assert psi(constant().fn, 1, 1, 0.5, 0.3, 0.5) == 0
    n = 4
    T = random_trig_poly(n, rng)
    hg = HGrid(per_decade=8)
    delta = 1 / n
    hs = hg.upto(delta)
    x = UniformGrid(256).nodes
    best = 0.0
    for h in hs:
        inner = max(np.mean(np.abs(T(x + h + s) - T(x + s) - T(x + h) + T(x)) ** 0.5) ** 2 for s in hs)
        best = max(best, inner / h ** 0.5)
    assert abs(psi(T.to_fn(), 1, 1, 0.5, delta, 0.5, UniformGrid(256), hg) - best) < 1e-10


@pytest.mark.parametrize("p", (1.0, 2.0))
def test_psi_matrix_paths_agree(p, rng):
    T = random_trig_poly(5, rng)
    hg = HGrid(per_decade=6)
    a = psi_matrix(T.to_fn(), 1, 2, p, 0.4, UniformGrid(256), hg)[1]
    b = psi_matrix(PeriodicFn(T, None, "T", True), 1, 2, p, 0.4, UniformGrid(256), hg)[1]
    assert np.allclose(a, b, rtol=1e-10, atol=1e-13)


def test_holder_seminorm_examples():
    assert holder_seminorm(constant().fn, HolderSpec(p=1, r=1, alpha=0.5)) == 0
    for p in PS:
        assert abs(holder_seminorm(exp_ix().fn, HolderSpec(p=p, r=1, alpha=1)) - 1) < 1e-6
        assert abs(holder_norm(exp_ix().fn, HolderSpec(p=p, r=1, alpha=1)) - 2) < 1e-6
    assert abs(holder_norm(constant(-3.0).fn, HolderSpec(p=0.5, r=2, alpha=1)) - 3) < 1e-12


def test_holder_norm_triangle_sup():
    v = holder_norm(triangle_wave().fn, HolderSpec(p=math.inf, r=1, alpha=1))
    assert abs(v - (math.pi + 1)) < 1e-6


def test_holder_seminorm_reports_tail_bound():
    sw = holder_seminorm_sweep(cos_x().fn, HolderSpec(p=2, r=1, alpha=0.5))
    assert sw.tail_bound == pytest.approx((2 * math.pi) ** -0.5 * 2 / math.sqrt(2))


def test_holder_seminorm_finite_for_odd_harmonic():
    # alpha = r - 1 + 1/p is the borderline exponent for the odd-harmonic series
    v = holder_seminorm(odd_harmonic(1).fn, HolderSpec(p=0.5, r=1, alpha=1.0), UniformGrid(1 << 15))
    assert 0 < v < 10


def test_holder_spec_alpha_guard():
    with pytest.raises(ValueError, match="alpha"):
        HolderSpec(p=1, r=1, alpha=1.5)
    with pytest.raises(ValueError):
        HolderSpec(p=1, r=0, alpha=0.5)


def test_averaged_norm_examples():
    x = UniformGrid(256)
    lam = UniformGrid(64)
    F = lambda xx, ll: np.cos(xx) + 0 * ll  # noqa: E731
    assert abs(averaged_lp_norm(F, 1, x, lam) - lp_norm(np.cos(x.nodes), 1)) < 1e-12
    assert abs(averaged_lp_norm(lambda xx, ll: np.exp(1j * (xx + ll)), 0.5, x, lam) - 1) < 1e-12
    assert abs(averaged_lp_norm(lambda xx, ll: np.cos(xx) * np.cos(ll), 2, x, lam) - 0.5) < 1e-12


def test_family_error_reproduces_polynomials(rng):
    T = random_trig_poly(3, rng)
    hs = HolderSpec(p=0.5, r=1, alpha=0.5)
    assert family_holder_error(T.to_fn(), [T, T], hs) < 1e-10
    S = TrigPoly.from_dict({0: 0.1}, 3)
    single = holder_norm(T.to_fn() - (T + S).to_fn(), hs)
    assert abs(family_holder_error(T.to_fn(), [T + S] * 3, hs) - single) < 1e-9


def test_holder_modulus_lacunary_value():
    v = holder_modulus(lacunary(0.5, 8).fn, 1, HolderSpec(p=2, r=1, alpha=0.5), 1 / 8)
    assert v == pytest.approx(2.938133, rel=1e-5)
