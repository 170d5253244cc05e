"""American call price as an infimum of European Bayes risks over maturities.

For each maturity ``t`` in ``(t0, T]`` the European problem gives a minimum
Bayes risk ``R_{B,t}``.  The American price is

    s0 - inf_t (s0 + X e^{-r (t - t0)}) R_{B,t}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import MarketParams, PriorWeights, min_bayes_risk
from .measures import DiscretePriceLaw, log_return_law_of, tilt
from .models.hyperbolic import min_horizon
from .models.specs import HyperbolicSpec, MixtureSpec
from .numerics import golden_section

MIN_GRID = 16


class AmericanPricingError(RuntimeError):
    """The objective could not be evaluated at some maturity."""

    def __init__(self, t: float, cause: BaseException):
        super().__init__(f"objective evaluation failed at t={t!r}: {cause}")
        self.t = t


@dataclass(frozen=True)
class AmericanResult:
    price: float
    argmin_t: float
    risk_curve_samples: tuple[tuple[float, float, float], ...]
    """``(t, R_{B,t}, objective)`` at every grid point, in grid order."""

    def as_dict(self) -> dict:
        return {
            "price": self.price,
            "argmin_t": self.argmin_t,
            "risk_curve_samples": [list(row) for row in self.risk_curve_samples],
        }


def _smallest_offset(model, market: MarketParams) -> float:
    eps = max(1e-6, market.tau / 1e6)
    if isinstance(model, HyperbolicSpec):
        eps = max(eps, min_horizon(model))
    if not eps < market.tau:
        raise ValueError(f"maturity window {market.tau} is shorter than the smallest "
                         f"usable maturity offset {eps:.4g}")
    return eps


def maturity_objective(model, market: MarketParams, t: float) -> tuple[float, float]:
    """``(R_{B,t}, (s0 + X e^{-r(t - t0)}) R_{B,t})`` for maturity ``t``."""
    sub = MarketParams(market.s0, market.strike, market.interest, market.t0, t)
    law = log_return_law_of(model, sub.tau)
    risk = min_bayes_risk(law, tilt(law), PriorWeights.from_market(sub), sub,
                          mean_price=sub.forward_mean)
    return risk, (sub.s0 + sub.discounted_strike) * risk


def price_american(model, market: MarketParams, grid_size: int = 64,
                   tol: float = 1e-10) -> AmericanResult:
    """American call price from the infimum over maturities.

    The objective is sampled on ``grid_size`` evenly spaced maturities from
    ``t0 + eps`` to ``T`` (``eps = max(1e-6, (T - t0)/1e6)``, since the
    zero-maturity law is degenerate; hyperbolic models also respect
    :func:`~bayes_pricer.models.hyperbolic.min_horizon`), then golden-section search refines
    inside the two cells around the best sample.

    Parameters
    ----------
    model : GbmSpec, MixtureSpec or HyperbolicSpec
    market : MarketParams
        Mixtures require ``t0 = 0``.
    grid_size : int
        At least 16.

    Raises
    ------
    AmericanPricingError
        If the objective fails at some maturity; ``.t`` names it.
    """
    if grid_size < MIN_GRID:
        raise ValueError(f"grid_size must be >= {MIN_GRID}, got {grid_size}")
    if isinstance(model, DiscretePriceLaw):
        raise TypeError("a discrete terminal law has no intermediate maturities")
    if isinstance(model, MixtureSpec) and market.t0 != 0.0:
        raise ValueError("mixture prices assume t0 = 0; shift the time origin so t0 = 0")

    cache: dict[float, tuple[float, float]] = {}

    def evaluate(t: float) -> tuple[float, float]:
        if t not in cache:
            try:
                cache[t] = maturity_objective(model, market, t)
            except Exception as exc:  # noqa: BLE001 - re-raised with the maturity
                raise AmericanPricingError(t, exc) from exc
        return cache[t]

    ts = np.linspace(market.t0 + _smallest_offset(model, market), market.T, grid_size)
    ts[-1] = market.T
    samples = []
    for t in ts:
        risk, obj = evaluate(float(t))
        samples.append((float(t), risk, obj))
    k = min(range(grid_size), key=lambda j: samples[j][2])
    best_t, best_obj = samples[k][0], samples[k][2]
    lo = samples[max(k - 1, 0)][0]
    hi = samples[min(k + 1, grid_size - 1)][0]
    t_ref, obj_ref = golden_section(lambda t: evaluate(t)[1], lo, hi, tol * max(1.0, market.T))
    if obj_ref < best_obj:
        best_t, best_obj = t_ref, obj_ref
    if not math.isfinite(best_obj):
        raise AmericanPricingError(best_t, ArithmeticError("non-finite objective"))
    return AmericanResult(price=market.s0 - best_obj, argmin_t=best_t,
                          risk_curve_samples=tuple(samples))
