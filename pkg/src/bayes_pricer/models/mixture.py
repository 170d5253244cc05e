"""Discrete normal-mixture model ``S_t = s0 exp(mu t + X_t)``, ``X_t ~ sum p_i N(0, a_i^2 t)``."""

from __future__ import annotations

import math

from ..core import MarketParams
from ..measures import LogReturnLaw, TiltedLaw
from ..numerics import std_normal_cdf, std_normal_pdf
from .gbm import bsm_price
from .specs import GbmSpec, MixtureSpec

_WINDOW_SDS = 40.0


def log_mgf_factor(spec: MixtureSpec, t: float) -> float:
    """``ln G_t = ln sum_i p_i exp(a_i^2 t / 2)``, i.e. ``ln E e^{X_t}``."""
    return math.log(math.fsum(p * math.exp(0.5 * a * a * t)
                              for p, a in zip(spec.weights, spec.scales)))


def tilted_weights(spec: MixtureSpec, t: float) -> tuple[float, ...]:
    """``q_i = p_i exp(a_i^2 t / 2) / G_t``."""
    raw = [p * math.exp(0.5 * a * a * t) for p, a in zip(spec.weights, spec.scales)]
    total = math.fsum(raw)
    return tuple(x / total for x in raw)


def _mix(weights, means, sds):
    comps = list(zip(weights, means, sds))

    def pdf(y: float) -> float:
        return math.fsum(w * std_normal_pdf((y - m) / s) / s for w, m, s in comps)

    def cdf(y: float) -> float:
        return math.fsum(w * std_normal_cdf((y - m) / s) for w, m, s in comps)

    return pdf, cdf


def mixture_law(spec: MixtureSpec, tau: float) -> LogReturnLaw:
    """``f0 = sum p_i N(-ln G, a_i^2 tau)`` and ``f1 = sum q_i N(-ln G + a_i^2 tau, a_i^2 tau)``."""
    log_g = log_mgf_factor(spec, tau)
    sds = [a * math.sqrt(tau) for a in spec.scales]
    q = tilted_weights(spec, tau)
    pdf0, cdf0 = _mix(spec.weights, [-log_g] * len(sds), sds)
    pdf1, cdf1 = _mix(q, [-log_g + s * s for s in sds], sds)
    widest = max(sds)
    exp_moment = math.fsum(p * math.exp(-log_g + 0.5 * s * s) for p, s in zip(spec.weights, sds))
    return LogReturnLaw(
        cdf=cdf0,
        pdf=pdf0,
        window=(-log_g - _WINDOW_SDS * widest, -log_g + widest * widest + _WINDOW_SDS * widest),
        closed_form_tilt=TiltedLaw(cdf=cdf1, pdf=pdf1),
        exp_moment=exp_moment,
        center=-log_g,
        label=f"mixture(p={spec.weights}, a={spec.scales})",
    )


def _check_origin(market: MarketParams) -> None:
    if market.t0 != 0.0:
        raise ValueError("mixture prices assume t0 = 0; shift the time origin so t0 = 0")


def mixture_price_formula(spec: MixtureSpec, market: MarketParams) -> float:
    """Closed-form mixture price, evaluated term by term for any ``m``."""
    _check_origin(market)
    T = market.T
    d = market.log_moneyness
    log_g = log_mgf_factor(spec, T)
    q = tilted_weights(spec, T)
    stock_leg = math.fsum(qi * std_normal_cdf((d - log_g + a * a * T) / (a * math.sqrt(T)))
                          for qi, a in zip(q, spec.scales))
    cash_leg = math.fsum(p * std_normal_cdf((d - log_g) / (a * math.sqrt(T)))
                         for p, a in zip(spec.weights, spec.scales))
    return market.s0 * stock_leg - market.discounted_strike * cash_leg


def mixture_price(spec: MixtureSpec, market: MarketParams) -> float:
    """B-price under the mixture model (``t0 = 0``).

    A one-component mixture is a GBM; it is priced by :func:`bsm_price` so
    that the two coincide bit for bit.
    """
    _check_origin(market)
    if len(spec.weights) == 1:
        return bsm_price(GbmSpec(spec.scales[0]), market)
    return mixture_price_formula(spec, market)


def equal_variance_sigma(spec: MixtureSpec) -> float:
    """Volatility of the GBM with the mixture's variance ``sum p_i a_i^2``."""
    return math.sqrt(math.fsum(p * a * a for p, a in zip(spec.weights, spec.scales)))


def mixture_near_martingale_factor(spec: MixtureSpec, u: float, t: float,
                                   half_exponent: bool = False) -> float:
    """Ratio ``E(S_t/ES_t | F_u) / (S_u/ES_u)`` for the mixture, ``0 < u < t``.

    The default uses the exponents ``a_i^2 u``; ``half_exponent=True`` uses
    ``a_i^2 u / 2``, which is what the Gaussian moment generating function
    produces if each component persists along the whole path.
    """
    if not 0.0 < u < t:
        raise ValueError(f"need 0 < u < t, got u={u}, t={t}")
    k = 0.5 if half_exponent else 1.0

    def moment(s: float) -> float:
        return math.fsum(p * math.exp(k * a * a * s) for p, a in zip(spec.weights, spec.scales))

    return moment(u) * moment(t - u) / moment(t)
