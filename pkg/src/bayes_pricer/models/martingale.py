"""Checks that mean-adjusted prices ``S_t / E S_t`` behave like martingales."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..measures import log_return_law_of
from ..numerics import DEFAULT_QUADRATURE, QuadratureSpec
from .hyperbolic import hyperbolic_mgf_base, martingale_moment
from .mixture import mixture_near_martingale_factor
from .specs import GbmSpec, HyperbolicSpec, MixtureSpec

GBM_TOL = 1e-12
HYPERBOLIC_TOL = 1e-5


@dataclass(frozen=True)
class MartingaleEntry:
    """One horizon of a martingale check.

    ``value`` is the computed moment ratio (1 for an exact martingale) and
    ``tolerance`` is ``None`` for informational rows.
    """

    t: float
    value: float
    u: Optional[float] = None
    variant: str = ""
    tolerance: Optional[float] = None

    @property
    def residual(self) -> float:
        return abs(self.value - 1.0)

    @property
    def passed(self) -> bool:
        return self.tolerance is None or self.residual < self.tolerance


@dataclass
class MartingaleReport:
    model: str
    entries: list[MartingaleEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    ok: bool = True

    @property
    def passed(self) -> bool:
        return self.ok and all(e.passed for e in self.entries)


def _gbm_report(spec: GbmSpec, t_grid, qspec) -> MartingaleReport:
    report = MartingaleReport(model=f"gbm(sigma={spec.sigma})")
    for t in t_grid:
        # E exp(sigma W_t) / M^t with M = exp(sigma^2/2), via the law of ln(S_t/ES_t)
        law = log_return_law_of(spec, t)
        report.entries.append(MartingaleEntry(t=t, value=law.mean_exp(qspec), tolerance=GBM_TOL))
    return report


def _hyperbolic_report(spec: HyperbolicSpec, t_grid, qspec) -> MartingaleReport:
    report = MartingaleReport(model=f"hyperbolic(zeta={spec.zeta}, delta={spec.delta})")
    m = hyperbolic_mgf_base(spec)
    for t in t_grid:
        ratio = martingale_moment(spec, t, qspec) / m ** t
        report.entries.append(MartingaleEntry(t=t, value=ratio, tolerance=HYPERBOLIC_TOL))
    return report


def _mixture_report(spec: MixtureSpec, t_grid) -> MartingaleReport:
    report = MartingaleReport(model=f"mixture(p={spec.weights}, a={spec.scales})")
    for variant, half in (("a^2 u", False), ("a^2 u / 2", True)):
        rows = [MartingaleEntry(t=t, u=t / 2, variant=variant,
                                value=mixture_near_martingale_factor(spec, t / 2, t, half))
                for t in t_grid]
        report.entries.extend(rows)
        ordered = sorted(rows, key=lambda e: e.t)
        shrinking = all(a.residual <= b.residual for a, b in zip(ordered, ordered[1:]))
        report.notes.append(f"[{variant}] |factor - 1| "
                            + ("shrinks" if shrinking else "does NOT shrink")
                            + " as t decreases")
        report.ok = report.ok and shrinking
    return report


def martingale_check(model, t_grid: Sequence[float],
                     qspec: QuadratureSpec = DEFAULT_QUADRATURE) -> MartingaleReport:
    """Martingale diagnostics for ``model`` at the horizons ``t_grid``.

    GBM and hyperbolic motion are exact martingales after mean adjustment:
    their rows hold ``E e^{X_t} / M^t`` from quadrature, tolerances 1e-12 and
    1e-5.  A normal mixture is only a near-martingale: its rows hold the
    conditional-expectation factor at ``u = t/2`` (both exponent variants),
    and the report passes if the deviation from 1 shrinks with ``t``.
    """
    t_grid = [float(t) for t in t_grid]
    if any(not t > 0 for t in t_grid):
        raise ValueError("horizons must be > 0")
    if isinstance(model, GbmSpec):
        return _gbm_report(model, t_grid, qspec)
    if isinstance(model, HyperbolicSpec):
        return _hyperbolic_report(model, t_grid, qspec)
    if isinstance(model, MixtureSpec):
        return _mixture_report(model, t_grid)
    raise TypeError(f"no martingale check for {model!r}")
