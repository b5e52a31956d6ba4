import math

import numpy as np
import pytest

from approxlab.spectral import (PeriodicFn, TrigPoly, UniformGrid, default_grid_size, difference_multiplier,
                                poly_derivative, poly_eval_shifted, sample, sample_coeffs, spectral_coeffs)
from approxlab.testfns import cos_x, exp_ix, odd_harmonic, odd_harmonic_series, random_trig_poly


def test_sample_constant():
    f = PeriodicFn.constant(1.0)
    assert np.allclose(sample(f, UniformGrid(4)), [1, 1, 1, 1])


def test_sample_exponential_roots_of_unity():
    vals = sample(exp_ix().fn, UniformGrid(4))
    assert np.allclose(vals, [1, 1j, -1, -1j], atol=1e-15)


def test_sample_odd_harmonic_matches_series():
    N = 64
    f = odd_harmonic(1, N=N).fn
    x = UniformGrid(1024).nodes
    oracle = sum(np.sin((2 * j + 1) * x) / (2 * j + 1) for j in range(N))
    assert np.max(np.abs(sample(f, UniformGrid(1024)) - oracle)) < 1e-12


def test_sample_reports_offending_node():
    f = PeriodicFn(lambda x: 1.0 / np.sin(x), None, "csc", True)
    with pytest.raises(FloatingPointError, match="node 0"):
        with np.errstate(divide="ignore"):
            sample(f, UniformGrid(8))


def test_spectral_coeffs_single_frequency():
    f = PeriodicFn(lambda x: np.exp(2j * x), None, "e2", False)
    c = spectral_coeffs(f, 3, UniformGrid(32))
    expected = np.zeros(7, complex)
    expected[3 + 2] = 1
    assert np.max(np.abs(c.coeffs - expected)) < 1e-12


def test_spectral_coeffs_constant_and_cosines():
    c = spectral_coeffs(PeriodicFn.constant(5.0), 2)
    assert abs(c.coeff(0) - 5) < 1e-12 and np.sum(np.abs(c.coeffs)) - 5 < 1e-12
    f = PeriodicFn(lambda x: np.cos(x) + np.cos(3 * x), None, "c13", True)
    c = spectral_coeffs(f, 3)
    for nu in (-3, -1, 1, 3):
        assert abs(c.coeff(nu) - 0.5) < 1e-12
    assert abs(c.coeff(0)) + abs(c.coeff(2)) < 1e-12


def test_spectral_coeffs_grid_too_small():
    with pytest.raises(ValueError, match="too small"):
        spectral_coeffs(cos_x().fn, 8, UniformGrid(16))


def test_derivative_examples():
    T = TrigPoly.from_dict({1: 1.0})
    assert np.allclose(poly_derivative(T, 1).coeffs, [0, 0, 1j])
    assert np.allclose(poly_derivative(TrigPoly.from_dict({0: 3.0}), 4).coeffs, 0)
    c2 = TrigPoly.from_dict({2: 0.5, -2: 0.5})
    assert np.allclose(poly_derivative(c2, 2).coeffs, -4 * c2.coeffs)


def test_eval_shifted_examples():
    assert abs(poly_eval_shifted(TrigPoly.from_dict({1: 1.0}), 0.0, math.pi) + 1) < 1e-15
    cos = TrigPoly.from_dict({1: 0.5, -1: 0.5})
    assert abs(poly_eval_shifted(cos, math.pi / 2, math.pi / 2) + 1) < 1e-15


def test_eval_matches_oversampled_oracle(rng):
    T = random_trig_poly(8, rng, real=False)
    x = rng.uniform(0, 2 * math.pi, 50)
    direct = np.array([sum(T.coeff(nu) * np.exp(1j * nu * xi) for nu in range(-8, 9)) for xi in x])
    assert np.max(np.abs(poly_eval_shifted(T, x) - direct)) < 1e-12
    dense = sample_coeffs(T.coeffs[None, :], 4096)[0]
    assert np.max(np.abs(dense - T.sample(4096))) < 1e-12
    assert np.max(np.abs(T.sample(4096)[::64] - poly_eval_shifted(T, UniformGrid(64).nodes))) < 1e-12


def test_sample_coeffs_aliased_small_grid(rng):
    T = random_trig_poly(6, rng, real=False)
    x = UniformGrid(5).nodes
    assert np.allclose(sample_coeffs(T.coeffs, 5)[0], poly_eval_shifted(T, x))


def test_difference_multiplier_is_difference():
    nus = np.array([-3, 0, 2])
    m = difference_multiplier(nus, 0.3, 2)
    x = 0.7
    for nu, mm in zip(nus, m):
        e = lambda t: np.exp(1j * nu * t)  # noqa: E731
        assert abs((e(x) - 2 * e(x + 0.3) + e(x + 0.6)) - mm * e(x)) < 1e-14


def test_trigpoly_json_roundtrip(rng):
    T = random_trig_poly(5, rng)
    assert np.allclose(TrigPoly.from_json(T.to_json()).coeffs, T.coeffs)
    assert T.is_real and T.degree == 5


def test_default_grid_size():
    assert default_grid_size(0) == 1024
    assert default_grid_size(100) == 1616


def test_odd_harmonic_series_closed_form_agree():
    closed = odd_harmonic(2).fn
    series = odd_harmonic_series(2, 4000)
    x = UniformGrid(256).nodes
    assert np.max(np.abs(closed(x) - series(x))) < 1e-3
