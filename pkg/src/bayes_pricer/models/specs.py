"""Parameter records for the stock-price models."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GbmSpec:
    """Geometric Brownian motion with volatility ``sigma`` per sqrt(year).

    The drift never enters a price: the law of ``ln(S_T / E S_T)`` is
    ``N(-sigma^2 tau / 2, sigma^2 tau)`` whatever the drift.
    """

    sigma: float
    drift: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")


@dataclass(frozen=True)
class MixtureSpec:
    """Normal mixture ``sum_i p_i N(0, a_i^2 t)`` for the log-return ``X_t``."""

    weights: tuple[float, ...]
    scales: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(p) for p in self.weights))
        object.__setattr__(self, "scales", tuple(float(a) for a in self.scales))
        if len(self.weights) != len(self.scales) or not self.weights:
            raise ValueError("weights and scales must be non-empty and of equal length")
        if len(self.weights) == 1:
            if abs(self.weights[0] - 1.0) > 1e-12:
                raise ValueError("a single-component mixture must have weight 1")
        elif any(not 0.0 < p < 1.0 for p in self.weights):
            raise ValueError(f"mixture weights must lie in (0, 1): {self.weights}")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1: {self.weights}")
        if any(not a > 0 for a in self.scales):
            raise ValueError(f"mixture scales must be > 0: {self.scales}")

    @classmethod
    def two_point(cls, p: float, a1: float, a2: float) -> "MixtureSpec":
        """``p N(0, a1^2 t) + (1-p) N(0, a2^2 t)``, dropping a zero-weight leg."""
        if p >= 1.0:
            return cls((1.0,), (a1,))
        if p <= 0.0:
            return cls((1.0,), (a2,))
        return cls((p, 1.0 - p), (a1, a2))


@dataclass(frozen=True)
class HyperbolicSpec:
    """Symmetric centred hyperbolic law ``h(x; zeta, delta)`` of ``Z_1``."""

    zeta: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.delta < self.zeta):
            raise ValueError(
                f"hyperbolic model needs 0 < delta < zeta (MGF at 1 exists), "
                f"got zeta={self.zeta}, delta={self.delta}")

    @property
    def alpha(self) -> float:
        """Exponential tail rate ``zeta / delta`` of the density."""
        return self.zeta / self.delta
