"""Calls on a stock with finitely many terminal prices."""

from __future__ import annotations

import math

from ..core import MarketParams
from ..measures import DiscretePriceLaw


def barrier_gain(law: DiscretePriceLaw, market: MarketParams, d: float) -> float:
    """``s0 E[(S/ES) I(S >= d)] - X e^{-r tau} P(S >= d)`` for one barrier ``d``."""
    mean = law.mean_price
    stock = math.fsum(p * s / mean for s, p in law.atoms if s >= d)
    cash = math.fsum(p for s, p in law.atoms if s >= d)
    return market.s0 * stock - market.discounted_strike * cash


def toy_price(law: DiscretePriceLaw,
              market: MarketParams) -> tuple[float, tuple[float, float]]:
    """Best barrier gain over ``d > 0`` and the interval of ``d`` attaining it.

    The gain only depends on which atoms lie at or above ``d``, so it is
    constant on the half-open cells ``(s_(k-1), s_(k)]`` between sorted atom
    prices, plus ``(s_max, inf)`` where nothing is exercised.  Each cell is
    evaluated once.  On ties the cell holding the Bayes barrier
    ``X e^{-r tau} ES / s0`` wins, then the lowest cell.

    Returns
    -------
    price, (lo, hi)
        The price and the cell ``lo < d <= hi`` (``hi`` may be ``inf``).
    """
    prices = sorted({s for s, _ in law.atoms})
    edges = [0.0] + prices + [math.inf]
    d_bayes = market.discounted_strike * law.mean_price / market.s0
    best = None
    for lo, hi in zip(edges[:-1], edges[1:]):
        gain = 0.0 if math.isinf(hi) else barrier_gain(law, market, hi)
        key = (gain, lo < d_bayes <= hi)
        if best is None or key > best[0]:
            best = (key, (lo, hi))
    (gain, _), interval = best
    return gain, interval
