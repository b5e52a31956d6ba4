import math

import numpy as np
import pytest

from approxlab.bestapprox import best_approx
from approxlab.moduli import DEFAULT_HGRID, omega, omega_profile
from approxlab.experiments import rate_fit
from approxlab.testfns import (CATALOG_NAMES, cos_x, g_staircase, get_entry, lacunary, odd_harmonic,
                               odd_harmonic_series, odd_harmonic_tail, ramp_phi, random_trig_poly, triangle_wave)
from approxlab.spectral import UniformGrid


def test_square_wave_value():
    assert abs(odd_harmonic(1).fn(math.pi / 2) - math.pi / 4) < 1e-15
    partial = odd_harmonic_series(1, 20000)(np.array(math.pi / 2))
    assert abs(partial - math.pi / 4) < 1e-4


def test_odd_harmonic_tail_bound():
    bound = odd_harmonic_tail(2, 101)
    exact = sum((2 * v + 1) ** -2.0 for v in range(101, 200000))
    assert exact < bound < 5e-3


def test_odd_harmonic_truncated_matches_series():
    e = odd_harmonic(2, N=50)
    x = UniformGrid(512).nodes
    assert np.max(np.abs(e.fn(x) - odd_harmonic_series(2, 50)(x))) < 1e-14
    assert e.fn.bandwidth == 99


def test_triangle_values_and_modulus():
    f = triangle_wave().fn
    assert f(math.pi) == pytest.approx(math.pi) and f(0.0) == 0
    for t in (0.01, 0.3, 1.0, 3.0):
        h = DEFAULT_HGRID.upto(t)[-1]  # omega is the running max up to the last grid step <= t
        assert omega(f, 1, t, math.inf, UniformGrid(1 << 12)) == pytest.approx(h, rel=1e-12)


def test_ramp_phi_properties():
    n = 6
    phi = ramp_phi(n).fn
    x = np.linspace(0, math.pi, 4001)
    v = phi(x)
    assert np.all(np.diff(v) >= -1e-12) and v[0] == 0 and v[-1] == pytest.approx(math.pi)
    xs = UniformGrid(1 << 14).nodes
    assert np.max(np.abs(triangle_wave().fn(xs) - phi(xs))) <= math.pi / n + 1e-12
    assert g_staircase(n, 1.0) == pytest.approx(1.0)


def test_smooth_rates():
    hs, om = omega_profile(cos_x().fn, 2, math.inf, t_max=0.05)
    assert rate_fit(list(zip(hs[hs > 1e-3], om[hs > 1e-3]))).slope == pytest.approx(2, abs=0.01)
    e = lacunary(0.5, 12)
    hs, om = omega_profile(e.fn, 1, math.inf, t_max=0.1)
    sel = hs > 2 ** -8
    assert rate_fit(list(zip(hs[sel], om[sel]))).slope == pytest.approx(0.5, abs=0.1)


def test_polynomials_have_zero_error(rng):
    T = random_trig_poly(3, rng)
    assert best_approx(T.to_fn(), 4, 1.0).value < 1e-9


def test_known_rates_and_saturation():
    sq = odd_harmonic(1)
    assert sq.rate(0.5, 1) == pytest.approx(2.0) and sq.rate(1.0, 1) == 1.0
    tri = triangle_wave()
    assert tri.saturated(2.0, 1) and not tri.saturated(math.inf, 1)
    assert tri.best_rate(1.0) == 2.0


def test_registry():
    for name in CATALOG_NAMES:
        assert get_entry(name).fn is not None
    with pytest.raises(ValueError, match="unknown"):
        get_entry("sawtooth")
    assert get_entry("lacunary", gamma=0.25).params["gamma"] == 0.25


@pytest.mark.parametrize("r", [2, 3])
def test_odd_harmonic_closed_form_matches_series(r):
    x = UniformGrid(512).nodes
    N = 1 << 14
    err = np.max(np.abs(odd_harmonic(r).fn(x) - odd_harmonic_series(r, N)(x)))
    assert err <= odd_harmonic_tail(r, N) + 1e-12
