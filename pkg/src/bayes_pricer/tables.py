"""How often the mixture price undercuts the equal-variance BSM price.

Setting: ``s0 = 60``, ``X = 70``, ``a1 = 1``, two-component mixtures
``p N(0, t) + (1-p) N(0, a2^2 t)`` against a GBM with variance
``p + (1-p) a2^2``.  The mixing weight runs over the 51 points ``j/50``,
``j = 0..50``; each cell reports the share of weights where the mixture
price is strictly below the BSM price.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import MarketParams
from .models.gbm import bsm_price
from .models.mixture import equal_variance_sigma, mixture_price
from .models.specs import GbmSpec, MixtureSpec

S0 = 60.0
STRIKE = 70.0
A1 = 1.0
MATURITIES = (0.03, 0.05, 0.1, 0.15, 0.2, 0.5)
A2_VALUES = (1.05, 1.2, 2.0, 4.0)
INTEREST = {1: 0.04, 2: 0.08}
N_WEIGHTS = 51
THREADS_ENV = "BAYES_PRICER_THREADS"

GRID_NOTE = ("mixing weight p = j/50 for j = 0..50 (51 values; the fractions have "
             "denominator 51, so both endpoints are included)")


@dataclass(frozen=True)
class TableCell:
    interest: float
    T: float
    a2: float
    count: int

    @property
    def fraction(self) -> float:
        return self.count / N_WEIGHTS


def weight_grid() -> list[float]:
    return [j / (N_WEIGHTS - 1) for j in range(N_WEIGHTS)]


def mixture_undercuts(p: float, a2: float, market: MarketParams) -> bool:
    """``mixture_price < bsm_price`` (strict) for the weight ``p``.

    At ``p = 0`` or ``1`` the mixture is a single GBM and both prices are
    computed by the same code, so the comparison is an exact tie.
    """
    spec = MixtureSpec.two_point(p, A1, a2)
    gbm = GbmSpec(equal_variance_sigma(spec))
    return mixture_price(spec, market) < bsm_price(gbm, market)


def table_cell(interest: float, T: float, a2: float) -> TableCell:
    market = MarketParams(S0, STRIKE, interest, 0.0, T)
    count = sum(mixture_undercuts(p, a2, market) for p in weight_grid())
    return TableCell(interest=interest, T=T, a2=a2, count=count)


def thread_count() -> int:
    """Worker cap from ``BAYES_PRICER_THREADS`` (unset or 0: one per CPU)."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}")
    return n if n > 0 else (os.cpu_count() or 1)


def compute_table(which: int, threads: int | None = None) -> list[TableCell]:
    """All cells of table ``which`` (1: i = .04, 2: i = .08), ordered by ``T`` then ``a2``."""
    if which not in INTEREST:
        raise ValueError(f"table must be 1 or 2, got {which!r}")
    interest = INTEREST[which]
    jobs = [(interest, T, a2) for T in MATURITIES for a2 in A2_VALUES]
    workers = thread_count() if threads is None else max(1, threads)
    if workers == 1:
        return [table_cell(*job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so the output never depends on timing
        return list(pool.map(lambda job: table_cell(*job), jobs))


def format_table(which: int, cells: list[TableCell]) -> str:
    """Plain-text grid with 7 significant digits per fraction."""
    lines = [f"# How often B-price < BSM price, i={INTEREST[which]:g}",
             f"# {GRID_NOTE}",
             "T".ljust(6) + "".join(f"a2={a2:g}".rjust(13) for a2 in A2_VALUES)]
    by_key = {(c.T, c.a2): c for c in cells}
    for T in MATURITIES:
        row = "".join(f"{by_key[(T, a2)].fraction:.7g}".rjust(13) for a2 in A2_VALUES)
        lines.append(f"{T:<6g}" + row)
    return "\n".join(lines) + "\n"
