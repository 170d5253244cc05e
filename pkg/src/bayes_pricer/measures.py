"""Laws of the normalized log price ``Y = ln(S_T / E S_T)`` and their tilts.

A :class:`LogReturnLaw` carries ``F0`` (and ``f0`` when it has one).  Because
``E e^Y = 1``, ``f1(y) = e^y f0(y)`` is again a density; :func:`tilt` returns
it as a :class:`TiltedLaw`.  The two are the competing hypotheses whose
minimum Bayes risk prices the call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate

MEAN_NORMALIZATION_TOL = 1e-4


class LawError(ValueError):
    """A law violates one of its defining normalizations."""


@dataclass(frozen=True)
class TiltedLaw:
    """The exponentially tilted law ``f1(y) = e^y f0(y)``."""

    cdf: Callable[[float], float]
    pdf: Optional[Callable[[float], float]] = None
    atoms: Optional[tuple[tuple[float, float], ...]] = None


@dataclass(frozen=True)
class LogReturnLaw:
    """Law ``F0`` of ``Y = ln(S_T / E S_T)``.

    ``window`` is the interval outside which both ``f0`` and ``f1`` carry
    negligible mass (below ~1e-12); quadratures are confined to it.
    ``exp_moment`` is ``E e^Y`` when the model knows it analytically.
    Atomic laws set ``atoms`` (pairs ``(y, prob)``) and leave ``pdf`` empty.
    """

    cdf: Callable[[float], float]
    pdf: Optional[Callable[[float], float]] = None
    support_lo: float = -math.inf
    support_hi: float = math.inf
    window: tuple[float, float] = (-math.inf, math.inf)
    closed_form_tilt: Optional[TiltedLaw] = None
    exp_moment: Optional[float] = None
    atoms: Optional[tuple[tuple[float, float], ...]] = None
    center: float = 0.0
    label: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def _integrate(self, f, a=None, b=None, spec=DEFAULT_QUADRATURE):
        lo = max(self.window[0], self.support_lo) if a is None else a
        hi = min(self.window[1], self.support_hi) if b is None else b
        if not lo < hi:
            return 0.0
        return integrate(f, lo, hi, spec, points=[self.center])

    def total_mass(self, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
        """``int f0`` (or the atom sum)."""
        if self.atoms is not None:
            return math.fsum(p for _, p in self.atoms)
        return self._integrate(self.pdf, spec=spec)

    def mean_exp(self, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
        """``E e^Y``, by quadrature of ``e^y f0(y)`` (or the atom sum)."""
        if self.atoms is not None:
            return math.fsum(p * math.exp(y) for y, p in self.atoms)
        return self._integrate(lambda y: math.exp(y) * self.pdf(y), spec=spec)

    def mean(self, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
        if self.atoms is not None:
            return math.fsum(p * y for y, p in self.atoms)
        return self._integrate(lambda y: y * self.pdf(y), spec=spec)

    def exp_moment_value(self) -> float:
        if self.exp_moment is not None:
            return self.exp_moment
        if "mean_exp" not in self._cache:
            self._cache["mean_exp"] = self.mean_exp()
        return self._cache["mean_exp"]


@dataclass(frozen=True)
class DiscretePriceLaw:
    """Finitely many terminal stock prices with their probabilities."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(s), float(p)) for s, p in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("a discrete law needs at least one atom")
        if any(s <= 0 for s, _ in atoms):
            raise ValueError("atom prices must be > 0")
        if any(p <= 0 for _, p in atoms):
            raise ValueError("atom probabilities must be > 0")
        if abs(math.fsum(p for _, p in atoms) - 1.0) > 1e-12:
            raise ValueError("atom probabilities must sum to 1")

    @property
    def mean_price(self) -> float:
        return math.fsum(s * p for s, p in self.atoms)

    def log_return_law(self) -> LogReturnLaw:
        mean = self.mean_price
        ys = tuple(sorted((math.log(s / mean), p) for s, p in self.atoms))
        tilted = tuple((y, p * math.exp(y)) for y, p in ys)

        def step_cdf(points):
            def cdf(y: float) -> float:
                return min(1.0, math.fsum(p for yk, p in points if yk <= y))
            return cdf

        return LogReturnLaw(
            cdf=step_cdf(ys),
            support_lo=ys[0][0],
            support_hi=ys[-1][0],
            window=(ys[0][0], ys[-1][0]),
            closed_form_tilt=TiltedLaw(cdf=step_cdf(tilted), atoms=tilted),
            atoms=ys,
            label="discrete",
        )


def _generic_tilt(law: LogReturnLaw) -> TiltedLaw:
    lo = max(law.window[0], law.support_lo)

    def pdf(y: float) -> float:
        return math.exp(y) * law.pdf(y)

    def cdf(y: float) -> float:
        if y <= lo:
            return 0.0
        return min(1.0, law._integrate(pdf, lo, min(y, law.window[1])))

    return TiltedLaw(cdf=cdf, pdf=pdf)


def tilt(law: LogReturnLaw) -> TiltedLaw:
    """Exponential tilt ``f1 = e^y f0``.

    Uses the law's closed form when it has one, otherwise integrates
    ``e^y f0`` from the left edge of the law's window.  Raises
    :class:`LawError` if ``E e^Y`` is off 1 by more than 1e-4.
    """
    moment = law.exp_moment_value()
    if abs(moment - 1.0) > MEAN_NORMALIZATION_TOL:
        raise LawError(f"law not mean-normalized: E e^Y = {moment!r}")
    if law.closed_form_tilt is not None:
        return law.closed_form_tilt
    if law.pdf is None:
        raise LawError("cannot tilt a law without a density or closed-form tilt")
    return _generic_tilt(law)


def generic_tilt(law: LogReturnLaw) -> TiltedLaw:
    """Quadrature tilt, ignoring any closed form (used to cross-check those)."""
    if law.pdf is None:
        raise LawError("generic tilt needs a density")
    return _generic_tilt(law)


def log_return_law_of(model, tau: float) -> LogReturnLaw:
    """Law of ``ln(S_T / E S_T)`` under ``model`` over a horizon of ``tau`` years."""
    from .models.specs import GbmSpec, HyperbolicSpec, MixtureSpec

    if isinstance(model, DiscretePriceLaw):
        return model.log_return_law()
    if not tau > 0:
        raise ValueError(f"horizon must be > 0, got {tau}")
    if isinstance(model, GbmSpec):
        from .models.gbm import gbm_law
        return gbm_law(model, tau)
    if isinstance(model, MixtureSpec):
        from .models.mixture import mixture_law
        return mixture_law(model, tau)
    if isinstance(model, HyperbolicSpec):
        from .models.hyperbolic import hyperbolic_law
        return hyperbolic_law(model, tau)
    raise TypeError(f"unsupported model {model!r}")
