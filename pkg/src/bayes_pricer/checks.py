"""Invariant suites run by ``bayes-pricer check``.

Every check reports a residual against a tolerance; a suite passes when
all of its checks do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (CONSISTENCY_RTOL, MarketParams, PricingResult, fair_game_residual,
                   hellinger_squared, leverage_bound, price_european)
from .measures import DiscretePriceLaw, log_return_law_of, tilt
from .models.gbm import bsm_price, gbm_hellinger_squared, gbm_law
from .models.hyperbolic import hyperbolic_price
from .models.martingale import martingale_check
from .models.mixture import mixture_price
from .models.specs import GbmSpec, HyperbolicSpec, MixtureSpec

HELLINGER_TOL = 1e-8
FAIR_GAME_RTOL = 1e-8
DUAL_PATH_TOL = 1e-5
SINGLE_MIXTURE_TOL = 1e-12
PROB_ITM_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)

TOY_LAW = DiscretePriceLaw(((2.0, 1 / 3), (0.5, 2 / 3)))
TOY_MARKET = MarketParams(1.0, 1.0, 0.0, 0.0, 1.0)
GBM_BENCH = (GbmSpec(0.2), MarketParams(100.0, 100.0, 0.05, 0.0, 1.0))
MIXTURE_BENCH = (MixtureSpec((0.5, 0.5), (1.0, 2.0)), MarketParams(60.0, 70.0, 0.04, 0.0, 0.1))
HYPERBOLIC_BENCH = (HyperbolicSpec(2.0, 1.0), MarketParams(100.0, 100.0, 0.0, 0.0, 1.0))
SUITES = ("martingale", "hellinger", "fairgame", "consistency")


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: Optional[float]

    @property
    def passed(self) -> bool:
        return self.tolerance is None or (math.isfinite(self.residual)
                                          and self.residual < self.tolerance)

    def line(self) -> str:
        tol = "   (info)" if self.tolerance is None else f"{self.tolerance:9.1e}"
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<58} residual={self.residual:.3e}  tol={tol}"


def benchmark_results() -> list[tuple[str, PricingResult, MarketParams]]:
    """Priced toy, GBM and mixture benchmarks."""
    out = []
    law = TOY_LAW.log_return_law()
    out.append(("toy", price_european(law, tilt(law), TOY_MARKET, TOY_LAW.mean_price), TOY_MARKET))
    for label, (spec, market) in (("gbm", GBM_BENCH), ("mixture", MIXTURE_BENCH)):
        law = log_return_law_of(spec, market.tau)
        out.append((label, price_european(law, tilt(law), market), market))
    return out


def hellinger_suite() -> list[CheckResult]:
    results = []
    for sigma in (0.1, 0.5, 1.0, 2.0):
        for tau in (0.1, 1.0):
            spec = GbmSpec(sigma)
            law = gbm_law(spec, tau)
            tilted = tilt(law)
            h2 = hellinger_squared(tilted.pdf, law.pdf, *law.window, points=[0.0])
            results.append(CheckResult(f"hellinger gbm sigma={sigma:g} tau={tau:g}",
                                       abs(h2 - gbm_hellinger_squared(spec, tau)), HELLINGER_TOL))
    return results


def fairgame_suite() -> list[CheckResult]:
    results = []
    for label, result, market in benchmark_results():
        scale = market.s0 + market.strike
        results.append(CheckResult(f"fair game {label}",
                                   abs(fair_game_residual(result, market)) / scale, FAIR_GAME_RTOL))
        for prob in PROB_ITM_GRID:
            ratio, holds = leverage_bound(result, market, prob)
            # residual is the shortfall of the leverage ratio below R_B
            results.append(CheckResult(f"leverage {label} P(itm)={prob:g}",
                                       max(0.0, result.bayes_risk - ratio), 1e-12))
    return results


def martingale_suite() -> list[CheckResult]:
    results = []
    cases = ((GbmSpec(0.3), (0.5, 1.0, 2.0)),
             (HyperbolicSpec(2.0, 1.0), (0.25, 0.5, 1.0)),
             (MixtureSpec((0.5, 0.5), (1.0, 2.0)), (0.4, 0.2, 0.1, 0.05)))
    for model, grid in cases:
        report = martingale_check(model, grid)
        for e in report.entries:
            tag = f" u={e.u:g} [{e.variant}]" if e.u is not None else ""
            results.append(CheckResult(f"{report.model} t={e.t:g}{tag}", e.residual, e.tolerance))
        if not report.ok:
            results.append(CheckResult(f"{report.model} deviation shrinks with t", 1.0, 0.5))
    return results


def consistency_suite() -> list[CheckResult]:
    results = []
    benches: list[tuple[str, object, MarketParams, Optional[Callable[[], float]]]] = [
        ("toy", TOY_LAW, TOY_MARKET, None),
        ("gbm", GBM_BENCH[0], GBM_BENCH[1], lambda: bsm_price(*GBM_BENCH)),
        ("mixture", MIXTURE_BENCH[0], MIXTURE_BENCH[1], lambda: mixture_price(*MIXTURE_BENCH)),
        ("hyperbolic", HYPERBOLIC_BENCH[0], HYPERBOLIC_BENCH[1],
         lambda: hyperbolic_price(*HYPERBOLIC_BENCH)),
    ]
    for label, model, market, closed in benches:
        law = log_return_law_of(model, market.tau)
        mean = model.mean_price if isinstance(model, DiscretePriceLaw) else None
        res = price_european(law, tilt(law), market, mean)
        paths = (res.price_via_eq1, res.price_via_eq8, res.price_via_integral)
        scale = market.s0 + market.strike
        results.append(CheckResult(f"three-way {label}", (max(paths) - min(paths)) / scale,
                                   CONSISTENCY_RTOL))
        if closed is not None:
            if label == "hyperbolic":  # dual-path agreement is an absolute tolerance
                residual, tol = abs(res.price - closed()), DUAL_PATH_TOL
            else:
                residual, tol = abs(res.price - closed()) / scale, CONSISTENCY_RTOL
            results.append(CheckResult(f"engine vs closed form {label}", residual, tol))
    spec, market = MIXTURE_BENCH
    single = abs(mixture_price(MixtureSpec((1.0,), (1.5,)), market)
                 - bsm_price(GbmSpec(1.5), market))
    results.append(CheckResult("mixture m=1 vs bsm", single, SINGLE_MIXTURE_TOL))
    return results


_RUNNERS = {
    "martingale": martingale_suite,
    "hellinger": hellinger_suite,
    "fairgame": fairgame_suite,
    "consistency": consistency_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite, or every suite for ``"all"``."""
    if name == "all":
        return [r for suite in SUITES for r in _RUNNERS[suite]()]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return _RUNNERS[name]()
