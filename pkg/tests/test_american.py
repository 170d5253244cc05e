import numpy as np
import pytest

from bayes_pricer.american import (AmericanPricingError, maturity_objective, price_american)
from bayes_pricer.core import MarketParams
from bayes_pricer.measures import DiscretePriceLaw
from bayes_pricer.models.gbm import bsm_price
from bayes_pricer.models.mixture import mixture_price
from bayes_pricer.models.specs import GbmSpec, HyperbolicSpec, MixtureSpec

BENCH = MarketParams(100.0, 100.0, 0.05, 0.0, 1.0)
SIGMA = GbmSpec(0.2)


def test_american_at_least_european():
    res = price_american(SIGMA, BENCH)
    assert res.price >= bsm_price(SIGMA, BENCH) - 1e-10
    assert BENCH.t0 < res.argmin_t <= BENCH.T


def test_dense_grid_oracle():
    res = price_american(SIGMA, BENCH)
    ts = np.linspace(BENCH.t0 + 1e-6, BENCH.T, 10_000)
    dense = min(maturity_objective(SIGMA, BENCH, float(t))[1] for t in ts)
    assert res.price == pytest.approx(BENCH.s0 - dense, rel=1e-6)


def test_grid_doubling_stable():
    a = price_american(SIGMA, BENCH, 64).price
    b = price_american(SIGMA, BENCH, 128).price
    assert abs(a - b) < 1e-6 * BENCH.s0


def test_monotone_in_maturity():
    prices = [price_american(SIGMA, MarketParams(100, 100, 0.05, 0.0, T)).price
              for T in (0.25, 0.5, 1.0)]
    assert prices == sorted(prices)


def test_zero_rate_endpoint():
    m = MarketParams(100, 110, 0.0, 0.0, 1.0)
    res = price_american(SIGMA, m)
    risk_T, obj_T = maturity_objective(SIGMA, m, 1.0)
    assert obj_T == pytest.approx((100 + 110) * risk_T, rel=1e-15)
    assert res.price - (100 - obj_T) >= -1e-10


def test_vanishing_strike_gives_spot():
    res = price_american(SIGMA, MarketParams(100, 1e-9, 0.05, 0.0, 1.0))
    assert res.price == pytest.approx(100.0, abs=1e-6)


def test_samples_and_serialization():
    res = price_american(SIGMA, BENCH, 16)
    assert len(res.risk_curve_samples) == 16
    ts = [t for t, _, _ in res.risk_curve_samples]
    assert ts[0] == pytest.approx(1e-6) and ts[-1] == 1.0
    assert res.as_dict()["price"] == res.price


def test_mixture_american():
    spec = MixtureSpec((0.5, 0.5), (1.0, 2.0))
    m = MarketParams(60, 70, 0.04, 0.0, 0.2)
    assert price_american(spec, m, 32).price >= mixture_price(spec, m) - 1e-10
    with pytest.raises(ValueError, match="t0 = 0"):
        price_american(spec, MarketParams(60, 70, 0.04, 0.1, 0.2))


def test_hyperbolic_american_starts_at_min_horizon():
    res = price_american(HyperbolicSpec(3.0, 0.5), MarketParams(100, 100, 0.02, 0.0, 0.5), 16)
    assert res.risk_curve_samples[0][0] > 1e-3


def test_bad_inputs():
    with pytest.raises(ValueError):
        price_american(SIGMA, BENCH, 8)
    with pytest.raises(TypeError):
        price_american(DiscretePriceLaw(((1.0, 1.0),)), BENCH)


def test_objective_failure_names_maturity(monkeypatch):
    import bayes_pricer.american as am

    def boom(model, tau):
        raise ArithmeticError("law failed")

    monkeypatch.setattr(am, "log_return_law_of", boom)
    with pytest.raises(AmericanPricingError) as info:
        price_american(SIGMA, BENCH, 16)
    assert info.value.t == pytest.approx(1e-6)
