import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci

from bayes_pricer.core import MarketParams, price_european
from bayes_pricer.measures import log_return_law_of, tilt
from bayes_pricer.models.gbm import bsm_price, gbm_hellinger_squared
from bayes_pricer.models.mixture import (equal_variance_sigma, log_mgf_factor,
                                         mixture_near_martingale_factor, mixture_price,
                                         mixture_price_formula, tilted_weights)
from bayes_pricer.models.specs import GbmSpec, MixtureSpec

EXAMPLE = MarketParams(60.0, 70.0, 0.04, 0.0, 0.1)
HALF_HALF = MixtureSpec((0.5, 0.5), (1.0, 2.0))


def engine_price(model, market):
    law = log_return_law_of(model, market.tau)
    return price_european(law, tilt(law), market).price


def test_bsm_limits():
    m = MarketParams(100, 80, 0.05, 0.0, 1.0)
    assert bsm_price(GbmSpec(1e-9), m) == pytest.approx(100 - m.discounted_strike, abs=1e-9)
    assert bsm_price(GbmSpec(0.3), MarketParams(100, 1e-12, 0.05, 0.0, 1.0)) == pytest.approx(
        100.0, abs=1e-9)


def test_bsm_example_instance_matches_engine():
    sigma = equal_variance_sigma(HALF_HALF)
    assert sigma == pytest.approx(math.sqrt(2.5), rel=1e-15)
    assert bsm_price(GbmSpec(sigma), EXAMPLE) == pytest.approx(
        engine_price(GbmSpec(sigma), EXAMPLE), abs=1e-10)


def test_drift_is_irrelevant():
    assert bsm_price(GbmSpec(0.3, drift=0.2), EXAMPLE) == bsm_price(GbmSpec(0.3), EXAMPLE)


def test_hellinger_closed_form_increases_with_sigma():
    values = [gbm_hellinger_squared(GbmSpec(s), 1.0) for s in (0.1, 0.5, 1.0, 2.0)]
    assert values == sorted(values)
    assert values[-1] == pytest.approx(2 * (1 - math.exp(-0.5)), rel=1e-15)


def test_mixture_validation():
    with pytest.raises(ValueError):
        MixtureSpec((0.5, 0.6), (1.0, 2.0))
    with pytest.raises(ValueError):
        MixtureSpec((1.0, 0.0), (1.0, 2.0))
    with pytest.raises(ValueError):
        MixtureSpec((0.5, 0.5), (1.0,))
    with pytest.raises(ValueError):
        MixtureSpec((0.5, 0.5), (1.0, -2.0))


def test_two_point_drops_empty_leg():
    assert MixtureSpec.two_point(0.0, 1.0, 2.0) == MixtureSpec((1.0,), (2.0,))
    assert MixtureSpec.two_point(1.0, 1.0, 2.0) == MixtureSpec((1.0,), (1.0,))


def test_tilted_weights():
    q = tilted_weights(HALF_HALF, 0.1)
    g = 0.5 * math.exp(0.05) + 0.5 * math.exp(0.2)
    assert log_mgf_factor(HALF_HALF, 0.1) == pytest.approx(math.log(g), rel=1e-15)
    assert q[0] == pytest.approx(0.5 * math.exp(0.05) / g, rel=1e-15)
    assert sum(q) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("sigma", [0.2, 1.0, 2.5])
def test_single_component_is_bsm(sigma):
    m = MarketParams(100, 90, 0.03, 0.0, 0.4)
    spec = MixtureSpec((1.0,), (sigma,))
    assert mixture_price(spec, m) == bsm_price(GbmSpec(sigma), m)
    assert mixture_price_formula(spec, m) == pytest.approx(bsm_price(GbmSpec(sigma), m), abs=1e-12)


def test_mixture_matches_engine_and_raw_quadrature():
    price = mixture_price(HALF_HALF, EXAMPLE)
    assert price == pytest.approx(engine_price(HALF_HALF, EXAMPLE), abs=1e-8)
    # independent oracle: raw mixture density written out here, scipy quadrature
    T, s0, k = EXAMPLE.T, EXAMPLE.s0, EXAMPLE.discounted_strike
    g = 0.5 * math.exp(0.5 * T) + 0.5 * math.exp(2.0 * T)

    def f0(y):
        return sum(0.5 * math.exp(-0.5 * ((y + math.log(g)) / (a * math.sqrt(T))) ** 2)
                   / (a * math.sqrt(2 * math.pi * T)) for a in (1.0, 2.0))

    lower = -EXAMPLE.log_moneyness
    stock, _ = sci.quad(lambda y: math.exp(y) * f0(y), lower, 20.0, epsabs=1e-13, limit=200)
    cash, _ = sci.quad(f0, lower, 20.0, epsabs=1e-13, limit=200)
    assert price == pytest.approx(s0 * stock - k * cash, abs=1e-7)


def test_mixture_requires_origin_zero():
    with pytest.raises(ValueError, match="t0 = 0"):
        mixture_price(HALF_HALF, MarketParams(60, 70, 0.04, 0.05, 0.15))


def test_near_martingale_factor_single_component():
    spec = MixtureSpec((1.0,), (1.3,))
    assert mixture_near_martingale_factor(spec, 0.2, 0.5) == pytest.approx(1.0, abs=1e-15)


def test_near_martingale_factor_small_horizon():
    factor = mixture_near_martingale_factor(HALF_HALF, 0.005, 0.01)
    # sum-product (Chebyshev) inequality puts the factor at or below one
    assert 0.9999 < factor < 1.0


@pytest.mark.parametrize("half", [False, True])
def test_near_martingale_factor_at_most_one_on_grid(half):
    for t in (0.01, 0.1, 0.5, 1.0, 2.0):
        for frac in (0.1, 0.25, 0.5, 0.9):
            assert mixture_near_martingale_factor(HALF_HALF, frac * t, t, half) <= 1.0 + 1e-15


def test_near_martingale_factor_tends_to_one():
    devs = [abs(mixture_near_martingale_factor(HALF_HALF, t / 2, t) - 1) for t in (0.4, 0.2, 0.1,
                                                                                     0.05)]
    assert all(a > b for a, b in zip(devs, devs[1:]))


def test_near_martingale_factor_domain():
    with pytest.raises(ValueError):
        mixture_near_martingale_factor(HALF_HALF, 0.5, 0.5)


@settings(max_examples=40, deadline=None)
@given(p=st.floats(0.01, 0.99), a1=st.floats(0.1, 2.0), a2=st.floats(0.1, 4.0),
       strike=st.floats(20, 150), T=st.floats(0.02, 1.5))
def test_mixture_closed_form_vs_engine(p, a1, a2, strike, T):
    spec = MixtureSpec((p, 1 - p), (a1, a2))
    m = MarketParams(60.0, strike, 0.05, 0.0, T)
    assert mixture_price(spec, m) == pytest.approx(engine_price(spec, m), abs=1e-8 * (60 + strike))


def test_vectorized_law_shapes():
    law = log_return_law_of(HALF_HALF, 0.1)
    ys = np.linspace(-1, 1, 5)
    assert [law.cdf(float(y)) for y in ys] == sorted(law.cdf(float(y)) for y in ys)
