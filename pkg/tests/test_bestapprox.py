import math

import numpy as np
import pytest
from scipy.optimize import check_grad

from approxlab.bestapprox import (SolverConfig, _Design, _HolderObjective, _minimax_lp, best_approx,
                                  best_approx_holder, best_approx_l2, deterministic_seed, en_zero)
from approxlab.moduli import HolderSpec, fn_norm, holder_norm
from approxlab.spectral import PeriodicFn, TrigPoly, UniformGrid
from approxlab.testfns import constant, cos_x, get_entry, odd_harmonic, random_trig_poly, triangle_wave

from conftest import PS


def _cos(m, a=1.0):
    return TrigPoly.from_dict({m: a / 2, -m: a / 2}).to_fn()


def test_l2_examples():
    assert best_approx_l2(cos_x().fn, 1).value < 1e-14
    assert abs(best_approx_l2(_cos(2), 1).value - 1 / math.sqrt(2)) < 1e-12
    f = TrigPoly.from_dict({1: 0.5, -1: 0.5, 3: 1 / 18, -3: 1 / 18}).to_fn()
    assert abs(best_approx_l2(f, 2).value - (1 / 9) / math.sqrt(2)) < 1e-12


def test_l2_matches_parseval_for_sampled_function():
    f = triangle_wave().fn
    res = best_approx(f, 5, 2)
    assert res.certified
    assert abs(res.value - fn_norm(f - res.poly.to_fn(), 2, UniformGrid(1024))) < 1e-8


@pytest.mark.parametrize("p", PS)
def test_polynomials_are_reproduced(p, rng):
    T = random_trig_poly(3, rng)
    res = best_approx(T.to_fn(), 3, p, budget=1)
    assert res.value < 1e-8


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_minimax_equioscillation(n):
    # 1032 = 24 * 43 puts the extrema of cos((n+1)x) on grid nodes for n <= 3
    res = best_approx(_cos(n + 1), n, math.inf, grid=UniformGrid(1032))
    assert abs(res.value - 1) < 1e-9
    assert np.max(np.abs(res.poly.coeffs)) < 1e-8


def test_minimax_complex_exponential():
    f = PeriodicFn(lambda x: np.exp(3j * np.asarray(x)), {3: 1.0}, "e3", False)
    assert abs(best_approx(f, 2, math.inf).value - 1) < 1e-6


def test_value_matches_returned_poly():
    f = triangle_wave().fn
    for p in (0.5, 1.0, math.inf):
        res = best_approx(f, 4, p, budget=2)
        grid = UniformGrid(1024)
        assert res.value == pytest.approx(fn_norm(f - res.poly.to_fn(), p, grid), rel=1e-9)


def test_nonincreasing_in_n_with_warm_start():
    f = odd_harmonic(1).fn
    prev, warm = math.inf, None
    for n in (2, 4, 8):
        res = best_approx(f, n, 0.5, budget=2, warm_start=warm)
        assert res.value <= prev + 1e-12
        prev, warm = res.value, res.poly


def test_warm_start_never_worse():
    f = triangle_wave().fn
    good = best_approx(f, 6, 1.0).poly
    assert best_approx(f, 6, 1.0, warm_start=good, config=SolverConfig(max_iter=1)).value <= \
        fn_norm(f - good.to_fn(), 1.0, UniformGrid(1024)) + 1e-12


def test_p_below_one_is_deterministic():
    f = odd_harmonic(1).fn
    a = best_approx(f, 4, 0.5, budget=2)
    b = best_approx(f, 4, 0.5, budget=2)
    assert a.value == b.value and np.array_equal(a.poly.coeffs, b.poly.coeffs)
    assert deterministic_seed("x", 1) == deterministic_seed("x", 1) != deterministic_seed("x", 2)


def test_budget_zero_rejected_for_p_below_one():
    with pytest.raises(ValueError, match="budget"):
        best_approx(cos_x().fn, 1, 0.5, budget=0)


def test_grid_too_small_rejected():
    with pytest.raises(ValueError):
        best_approx(cos_x().fn, 8, 1.0, grid=UniformGrid(10))


def test_zero_mean_examples():
    assert abs(en_zero(constant().fn, 3, 2).value - 1) < 1e-12
    g = TrigPoly.from_dict({1: 0.5, -1: 0.5, 2: 0.25j, -2: -0.25j}).to_fn()
    assert en_zero(g, 2, 0.5, budget=1).value < 1e-8
    # below p = 1 a zero-mean polynomial does better than 0 against a constant
    assert en_zero(constant().fn, 2, 0.5, budget=1).value < 1


@pytest.mark.parametrize("p,r,alpha", [(2.0, 1, 0.5), (1.0, 2, 1.5), (0.5, 1, 0.5), (1.0, 1, 1.0)])
def test_holder_gradient_matches_finite_differences(p, r, alpha, rng):
    hs = HolderSpec(p=p, r=r, alpha=alpha, per_decade=4)
    obj = _HolderObjective(triangle_wave().fn, 3, hs, UniformGrid(128))
    th = obj.theta_of(best_approx_l2(triangle_wave().fn, 3, UniformGrid(128)).poly) + 0.05 * rng.standard_normal(7)
    args = (p, 0.05, 0.5)
    err = check_grad(lambda t: obj(t, *args)[0], lambda t: obj(t, *args)[1], th, epsilon=1e-7)
    assert err < 1e-5 * max(1.0, np.linalg.norm(obj(th, *args)[1]))


def test_holder_gradient_complex(rng):
    f = PeriodicFn(lambda x: np.exp(1j * np.asarray(x)) + np.abs(np.sin(np.asarray(x))), None, "c", False)
    hs = HolderSpec(p=1.5, r=1, alpha=0.5, per_decade=4)
    obj = _HolderObjective(f, 2, hs, UniformGrid(64))
    th = rng.standard_normal(10)
    err = check_grad(lambda t: obj(t, 1.5, 0.1, 0.3)[0], lambda t: obj(t, 1.5, 0.1, 0.3)[1], th, epsilon=1e-7)
    assert err < 1e-5


def test_holder_best_not_worse_than_l2_and_exact_value():
    f = triangle_wave().fn
    hs = HolderSpec(p=2, r=1, alpha=0.5)
    res = best_approx_holder(f, 4, hs)
    l2 = best_approx_l2(f, 4).poly
    grid = UniformGrid(1024)
    assert res.value <= holder_norm(f - l2.to_fn(), hs, grid) + 1e-12
    assert res.value == pytest.approx(holder_norm(f - res.poly.to_fn(), hs, grid), rel=1e-12)


def test_holder_polynomial_reproduced(rng):
    T = random_trig_poly(2, rng)
    assert best_approx_holder(T.to_fn(), 2, HolderSpec(p=math.inf, r=1, alpha=0.5)).value < 1e-8


@pytest.mark.parametrize("name", ["square", "triangle", "lacunary"])
def test_exchange_minimax_matches_full_lp(name):
    f = get_entry(name).fn
    D = _Design(f, 8, UniformGrid(4000))
    fast = np.abs(D.residual(_minimax_lp(D))).max()
    full = np.abs(D.residual(_minimax_lp(D, np.arange(4000)))).max()
    assert fast == pytest.approx(full, rel=1e-7)
