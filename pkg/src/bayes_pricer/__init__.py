"""European and American call prices from minimum Bayes risk."""

from .american import AmericanPricingError, AmericanResult, price_american
from .core import (MarketParams, PricingConsistencyError, PricingResult, PriorWeights,
                   bayes_barrier, fair_game_residual, hellinger, leverage_bound,
                   min_bayes_risk, price_european, price_location_scale, risk_curve)
from .measures import DiscretePriceLaw, LawError, LogReturnLaw, TiltedLaw, log_return_law_of, tilt
from .models import (GbmSpec, HyperbolicSpec, MixtureSpec, bsm_price, hyperbolic_price,
                     martingale_check, mixture_price, toy_price)
from .numerics import QuadratureError, QuadratureSpec

__all__ = [
    "AmericanPricingError", "AmericanResult", "DiscretePriceLaw", "GbmSpec", "HyperbolicSpec",
    "LawError", "LogReturnLaw", "MarketParams", "MixtureSpec", "PricingConsistencyError",
    "PricingResult", "PriorWeights", "QuadratureError", "QuadratureSpec", "TiltedLaw",
    "bayes_barrier", "bsm_price", "fair_game_residual", "hellinger", "hyperbolic_price",
    "leverage_bound", "log_return_law_of", "martingale_check", "min_bayes_risk",
    "mixture_price", "price_american", "price_european", "price_location_scale",
    "risk_curve", "tilt", "toy_price",
]
