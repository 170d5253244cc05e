"""Call prices from the minimum Bayes risk of testing ``F1`` against ``F0``.

With priors ``pi1 = s0 / (s0 + X e^{-r tau})`` and ``pi0 = 1 - pi1``, the
rule "decide F1 when ``S_T <= d``" has risk ``R(d)``.  Its minimizer is the
barrier ``d_B = X e^{-r tau} E S_T / s0`` and the minimum ``R_B`` gives the
call price ``C = s0 - R_B (s0 + X e^{-r tau})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .measures import LogReturnLaw, TiltedLaw
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate

CONSISTENCY_RTOL = 1e-8


class PricingConsistencyError(ArithmeticError):
    """The equivalent price formulas disagree; the law implementation is broken."""


@dataclass(frozen=True)
class MarketParams:
    s0: float
    strike: float
    interest: float
    t0: float = 0.0
    T: float = 1.0

    def __post_init__(self):
        if not self.s0 > 0:
            raise ValueError(f"s0 must be > 0, got {self.s0}")
        if not self.strike > 0:
            raise ValueError(f"strike must be > 0, got {self.strike}")
        if not self.T > self.t0:
            raise ValueError(f"maturity T={self.T} must exceed t0={self.t0}")
        if not self.interest > -1:
            raise ValueError(f"interest must be > -1, got {self.interest}")

    @property
    def r(self) -> float:
        """Continuously compounded rate ``ln(1 + i)``."""
        return math.log1p(self.interest)

    @property
    def tau(self) -> float:
        return self.T - self.t0

    @property
    def discounted_strike(self) -> float:
        return self.strike * math.exp(-self.r * self.tau)

    @property
    def forward_mean(self) -> float:
        """Martingale-consistent ``E S_T = s0 e^{r tau}``."""
        return self.s0 * math.exp(self.r * self.tau)

    @property
    def log_moneyness(self) -> float:
        """``D = ln(s0 / X) + r tau``."""
        return math.log(self.s0 / self.strike) + self.r * self.tau


@dataclass(frozen=True)
class PriorWeights:
    pi1: float
    pi0: float

    @classmethod
    def from_market(cls, market: MarketParams) -> "PriorWeights":
        k = market.discounted_strike
        pi1 = market.s0 / (market.s0 + k)
        return cls(pi1=pi1, pi0=k / (market.s0 + k))


@dataclass(frozen=True)
class PricingResult:
    price: float
    bayes_risk: float
    barrier: float
    mean_price: float
    price_via_eq8: float
    price_via_eq1: float
    price_via_integral: float

    def as_dict(self) -> dict:
        return {
            "price": self.price,
            "bayes_risk": self.bayes_risk,
            "barrier": self.barrier,
            "mean_price": self.mean_price,
            "price_via_eq1": self.price_via_eq1,
            "price_via_eq8": self.price_via_eq8,
            "price_via_integral": self.price_via_integral,
        }


def risk_curve(law: LogReturnLaw, tilted: TiltedLaw, weights: PriorWeights,
               mean_price: float, d: float) -> float:
    """Bayes risk ``pi1 F1(ln(d/ES)) + pi0 (1 - F0(ln(d/ES)))`` of barrier ``d``."""
    if not d > 0:
        raise ValueError(f"barrier must be > 0, got {d}")
    if not mean_price > 0:
        raise ValueError(f"mean price must be > 0, got {mean_price}")
    y = math.log(d / mean_price)
    return weights.pi1 * tilted.cdf(y) + weights.pi0 * (1.0 - law.cdf(y))


def bayes_barrier(weights: PriorWeights, mean_price: float, market: MarketParams) -> float:
    """Root ``d_B = pi0 E S_T / pi1 = X e^{-r tau} E S_T / s0`` of the risk derivative."""
    if not mean_price > 0:
        raise ValueError(f"mean price must be > 0, got {mean_price}")
    return market.discounted_strike * mean_price / market.s0


def min_bayes_risk(law: LogReturnLaw, tilted: TiltedLaw, weights: PriorWeights,
                   market: MarketParams, mean_price: float | None = None) -> float:
    # ln(d_B / E S_T) = ln(X/s0) - r tau, whatever E S_T is
    y = -market.log_moneyness
    return weights.pi1 * tilted.cdf(y) + weights.pi0 * (1.0 - law.cdf(y))


def upper_tilted_mass(law: LogReturnLaw, tilted: TiltedLaw, a: float,
                      spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``int_a^inf e^y dF0(y)`` by direct summation or quadrature of the tilted density."""
    if law.atoms is not None:
        return math.fsum(p * math.exp(y) for y, p in law.atoms if y > a)
    if tilted.pdf is not None:
        density = tilted.pdf
    else:
        def density(y):
            return math.exp(y) * law.pdf(y)
    lo = max(a, law.window[0], law.support_lo)
    hi = min(law.window[1], law.support_hi)
    if not lo < hi:
        return 0.0
    return integrate(density, lo, hi, spec, points=[law.center])


def price_european(law: LogReturnLaw, tilted: TiltedLaw, market: MarketParams,
                   mean_price: float | None = None,
                   spec: QuadratureSpec = DEFAULT_QUADRATURE) -> PricingResult:
    """European call price through the Bayes risk, computed three ways.

    * ``s0 - R_B (s0 + X e^{-r tau})``;
    * ``s0 [1 - F1(-D)] - X e^{-r tau} [1 - F0(-D)]``;
    * ``s0 int_{-D}^inf e^y f0(y) dy - X e^{-r tau} [1 - F0(-D)]``.

    Raises :class:`PricingConsistencyError` when any two differ by more than
    ``1e-8 (s0 + X)``.
    """
    if mean_price is None:
        mean_price = market.forward_mean
    weights = PriorWeights.from_market(market)
    k = market.discounted_strike
    s0 = market.s0
    minus_d = -market.log_moneyness
    f0 = law.cdf(minus_d)
    f1 = tilted.cdf(minus_d)
    r_b = weights.pi1 * f1 + weights.pi0 * (1.0 - f0)
    via_eq1 = s0 - r_b * (s0 + k)
    via_eq8 = s0 * (1.0 - f1) - k * (1.0 - f0)
    via_integral = s0 * upper_tilted_mass(law, tilted, minus_d, spec) - k * (1.0 - f0)
    tol = CONSISTENCY_RTOL * (s0 + market.strike)
    spread = max(via_eq1, via_eq8, via_integral) - min(via_eq1, via_eq8, via_integral)
    if spread > tol:
        raise PricingConsistencyError(
            f"price formulas disagree by {spread:.3e} > {tol:.3e}: "
            f"eq1={via_eq1!r} eq8={via_eq8!r} integral={via_integral!r}")
    return PricingResult(
        price=via_eq1,
        bayes_risk=r_b,
        barrier=bayes_barrier(weights, mean_price, market),
        mean_price=mean_price,
        price_via_eq8=via_eq8,
        price_via_eq1=via_eq1,
        price_via_integral=via_integral,
    )


def price_location_scale(G0: Callable[[float], float], G1: Callable[[float], float],
                         theta0: float, theta1: float, sigma0: float, sigma1: float,
                         market: MarketParams) -> float:
    """Call price when ``F_i(y) = G_i((y - theta_i) / sigma_i)`` with symmetric ``G_i``."""
    d = market.log_moneyness
    return (market.s0 * G1((d + theta1) / sigma1)
            - market.discounted_strike * G0((d + theta0) / sigma0))


def leverage_bound(result: PricingResult, market: MarketParams,
                   prob_itm: float) -> tuple[float, bool]:
    """Writer's accounting leverage ``(s0 - C) / (s0 + X e^{-r tau} P(S_T > X))``.

    Returns the ratio and whether it dominates ``R_B`` (to 1e-12).
    """
    if not 0.0 <= prob_itm <= 1.0:
        raise ValueError(f"prob_itm must be in [0, 1], got {prob_itm}")
    ratio = (market.s0 - result.price) / (market.s0 + market.discounted_strike * prob_itm)
    return ratio, ratio >= result.bayes_risk - 1e-12


def fair_game_residual(result: PricingResult, market: MarketParams) -> float:
    """``R_B (C + X e^{-r tau}) - (s0 - C)(1 - R_B)``; zero at the fair price."""
    c, r_b = result.price, result.bayes_risk
    return r_b * (c + market.discounted_strike) - (market.s0 - c) * (1.0 - r_b)


def hellinger_squared(f: Callable[[float], float], g: Callable[[float], float],
                      lo: float = -math.inf, hi: float = math.inf,
                      spec: QuadratureSpec = DEFAULT_QUADRATURE, points=None) -> float:
    return integrate(lambda x: (math.sqrt(f(x)) - math.sqrt(g(x))) ** 2, lo, hi, spec,
                     points=points)


def hellinger(f: Callable[[float], float], g: Callable[[float], float],
              lo: float = -math.inf, hi: float = math.inf,
              spec: QuadratureSpec = DEFAULT_QUADRATURE, points=None) -> float:
    """Hellinger distance ``sqrt(int (sqrt f - sqrt g)^2)``, in ``[0, sqrt 2]``."""
    h2 = hellinger_squared(f, g, lo, hi, spec, points)
    return math.sqrt(min(max(h2, 0.0), 2.0))
