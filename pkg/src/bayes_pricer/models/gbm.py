"""Black-Scholes-Merton model: lognormal terminal price."""

from __future__ import annotations

import math

from ..core import MarketParams
from ..measures import LogReturnLaw, TiltedLaw
from ..numerics import std_normal_cdf, std_normal_pdf
from .specs import GbmSpec

_WINDOW_SDS = 40.0


def _normal(mean: float, sd: float):
    def pdf(y: float) -> float:
        return std_normal_pdf((y - mean) / sd) / sd

    def cdf(y: float) -> float:
        return std_normal_cdf((y - mean) / sd)

    return pdf, cdf


def gbm_law(spec: GbmSpec, tau: float) -> LogReturnLaw:
    """``N(-sigma^2 tau/2, sigma^2 tau)`` with closed-form tilt ``N(+sigma^2 tau/2, sigma^2 tau)``."""
    var = spec.sigma * spec.sigma * tau
    sd = math.sqrt(var)
    pdf0, cdf0 = _normal(-0.5 * var, sd)
    pdf1, cdf1 = _normal(0.5 * var, sd)
    reach = 0.5 * var + _WINDOW_SDS * sd
    return LogReturnLaw(
        cdf=cdf0,
        pdf=pdf0,
        window=(-reach, reach),
        closed_form_tilt=TiltedLaw(cdf=cdf1, pdf=pdf1),
        exp_moment=math.exp(-0.5 * var + 0.5 * var),
        label=f"gbm(sigma={spec.sigma})",
    )


def bsm_price(spec: GbmSpec, market: MarketParams) -> float:
    """Black-Scholes-Merton call ``s0 Phi(d1) - X e^{-r tau} Phi(d2)``."""
    vol = spec.sigma * math.sqrt(market.tau)
    d = market.log_moneyness
    d1 = (d + 0.5 * vol * vol) / vol
    d2 = (d - 0.5 * vol * vol) / vol
    return market.s0 * std_normal_cdf(d1) - market.discounted_strike * std_normal_cdf(d2)


def gbm_hellinger_squared(spec: GbmSpec, tau: float) -> float:
    """Closed form ``H^2(f1, f0) = 2 (1 - exp(-sigma^2 tau / 8))``."""
    return -2.0 * math.expm1(-spec.sigma ** 2 * tau / 8.0)
