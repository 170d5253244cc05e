import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci

from bayes_pricer.core import MarketParams, price_european
from bayes_pricer.measures import log_return_law_of, tilt
from bayes_pricer.models.hyperbolic import (HyperbolicLevyLaw, hyperbolic_cf, hyperbolic_density,
                                            hyperbolic_mgf_base, hyperbolic_price,
                                            hyperbolic_variance, martingale_moment, min_horizon,
                                            motion_total_mass)
from bayes_pricer.models.specs import HyperbolicSpec
from bayes_pricer.numerics import bessel_k1, fourier_cosine_density, integrate

BASE = HyperbolicSpec(2.0, 1.0)


def raw_density(x, zeta, delta):
    return math.exp(-zeta * math.sqrt(1 + (x / delta) ** 2)) / (2 * delta * bessel_k1(zeta))


def test_density_normalized():
    assert integrate(lambda x: hyperbolic_density(BASE, x), -math.inf, math.inf) == pytest.approx(
        1.0, abs=1e-8)
    assert hyperbolic_density(BASE, 0.7) == pytest.approx(raw_density(0.7, 2.0, 1.0), rel=1e-14)


def test_mgf_against_quadrature():
    # e^x h(x) decays like e^{-x}; beyond |x| = 80 it is below 1e-34
    val, _ = sci.quad(lambda x: math.exp(x) * raw_density(x, 2.0, 1.0), -80.0, 80.0,
                      points=[0.0], epsabs=1e-13, epsrel=1e-13, limit=400)
    assert hyperbolic_mgf_base(BASE) == pytest.approx(val, abs=1e-8)


def test_mgf_small_delta():
    spec = HyperbolicSpec(2.0, 1e-3)
    val, _ = sci.quad(lambda x: math.exp(x) * raw_density(x, 2.0, 1e-3), -0.1, 0.1,
                      points=[0.0], epsabs=1e-14, limit=400)
    assert hyperbolic_mgf_base(spec) == pytest.approx(val, abs=1e-4)
    assert hyperbolic_mgf_base(spec) == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("zeta", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("ratio", [0.1, 0.5, 0.9])
def test_mgf_exceeds_one(zeta, ratio):
    assert hyperbolic_mgf_base(HyperbolicSpec(zeta, ratio * zeta)) > 1.0


def test_variance_against_quadrature():
    val, _ = sci.quad(lambda x: x * x * raw_density(x, 2.0, 1.0), -np.inf, np.inf, epsabs=1e-13)
    assert hyperbolic_variance(BASE) == pytest.approx(val, rel=1e-10)


def cf_oracle(u, zeta=2.0, delta=1.0):
    val, _ = sci.quad(lambda x: math.cos(u * x) * raw_density(x, zeta, delta), 0.0, 60.0,
                      epsabs=1e-14, epsrel=1e-13, limit=2000)
    return 2.0 * val


def test_cf_at_origin_and_symmetry():
    assert hyperbolic_cf(BASE, 0.0) == pytest.approx(1.0, abs=1e-15)
    for u in (0.3, 1.7, 8.2):
        assert hyperbolic_cf(BASE, -u) == hyperbolic_cf(BASE, u)


@pytest.mark.parametrize("u", [0.5, 1.0, 3.0])
def test_cf_against_fourier_quadrature(u):
    assert hyperbolic_cf(BASE, u) == pytest.approx(cf_oracle(u), abs=1e-8)


def test_cf_decays_in_unit_interval():
    vals = hyperbolic_cf(BASE, np.linspace(0, 30, 121))
    assert np.all(vals > 0) and np.all(vals <= 1.0)
    assert np.all(np.diff(vals) < 0)


def test_cf_requires_delta_below_zeta_for_mgf():
    with pytest.raises(ValueError):
        HyperbolicSpec(1.0, 2.0)


def test_inverted_density_normalized_and_nonnegative():
    law = HyperbolicLevyLaw(BASE, 0.25)
    xs = np.linspace(-15, 15, 601)
    assert law.motion_density(xs).min() > -1e-8
    assert motion_total_mass(BASE, 0.25) == pytest.approx(1.0, abs=1e-6)


def test_cosine_density_agrees_with_node_table():
    law = HyperbolicLevyLaw(BASE, 0.25)
    phi_t = lambda u: np.asarray(hyperbolic_cf(BASE, u)) ** 0.25  # noqa: E731
    for x in (-2.0, 0.0, 0.4, 3.0):
        assert fourier_cosine_density(phi_t, x) == pytest.approx(float(law.motion_density(x)),
                                                                 abs=1e-10)


@pytest.mark.parametrize("t", [0.25, 0.5, 1.0])
def test_martingale_moment(t):
    assert martingale_moment(BASE, t) == pytest.approx(hyperbolic_mgf_base(BASE) ** t, abs=1e-5)


def test_tilted_cdf_against_quadrature_of_tilted_density():
    levy = HyperbolicLevyLaw(HyperbolicSpec(1.5, 1.2), 0.5)
    lo = levy.window.lo
    for y in (-2.0, -0.3, 0.0, 1.5, 6.0):
        mass = integrate(lambda s: float(levy.pdf1(s)), lo, y, points=[-levy.shift])
        assert float(levy.cdf1(y)) == pytest.approx(mass, abs=1e-9)


def test_short_horizon_refused():
    with pytest.raises(ValueError, match="shortest invertible horizon"):
        HyperbolicLevyLaw(BASE, 0.5 * min_horizon(BASE))


def test_price_arbitrage_bounds_and_dual_path():
    m = MarketParams(100, 100, 0.0, 0.0, 1.0)
    price = hyperbolic_price(BASE, m)
    assert 0.0 <= price <= 100.0
    law = log_return_law_of(BASE, 1.0)
    assert price_european(law, tilt(law), m).price == pytest.approx(price, abs=1e-5)


def test_price_vanishing_strike():
    m = MarketParams(100, 1e-8, 0.0, 0.0, 1.0)
    assert hyperbolic_price(BASE, m) == pytest.approx(100.0, abs=1e-5)


def test_price_requires_origin_zero():
    with pytest.raises(ValueError, match="t0 = 0"):
        hyperbolic_price(BASE, MarketParams(100, 100, 0.0, 0.5, 1.0))


@settings(max_examples=8, deadline=None)
@given(zeta=st.floats(1.5, 4.0), ratio=st.floats(0.2, 0.75), strike=st.floats(50, 150),
       T=st.floats(0.25, 1.0))
def test_dual_path_random(zeta, ratio, strike, T):
    spec = HyperbolicSpec(zeta, ratio * zeta)
    m = MarketParams(100.0, strike, 0.03, 0.0, T)
    law = log_return_law_of(spec, T)
    res = price_european(law, tilt(law), m)
    assert res.price == pytest.approx(hyperbolic_price(spec, m), abs=1e-5)
    assert max(0.0, 100 - m.discounted_strike) - 1e-8 <= res.price <= 100.0 + 1e-8
