"""Stock-price models."""

from .gbm import bsm_price, gbm_hellinger_squared, gbm_law
from .hyperbolic import (HyperbolicLevyLaw, hyperbolic_cf, hyperbolic_density, hyperbolic_law,
                         hyperbolic_mgf_base, hyperbolic_price, martingale_moment,
                         motion_total_mass)
from .martingale import MartingaleReport, martingale_check
from .mixture import (equal_variance_sigma, mixture_law, mixture_near_martingale_factor,
                      mixture_price)
from .specs import GbmSpec, HyperbolicSpec, MixtureSpec
from .toy import toy_price

__all__ = [
    "GbmSpec", "HyperbolicSpec", "MixtureSpec", "HyperbolicLevyLaw", "MartingaleReport",
    "bsm_price", "equal_variance_sigma", "gbm_hellinger_squared", "gbm_law", "hyperbolic_cf",
    "hyperbolic_density", "hyperbolic_law", "hyperbolic_mgf_base", "hyperbolic_price",
    "martingale_check", "martingale_moment", "mixture_law", "mixture_near_martingale_factor",
    "mixture_price", "motion_total_mass", "toy_price",
]
