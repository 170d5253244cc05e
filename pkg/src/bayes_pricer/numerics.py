"""Special functions, quadrature, cosine inversion and scalar minimization.

Everything here is a pure function of its arguments.  The modified Bessel
functions use a three-way split: the ascending power series for
``|z| <= 2``, Steed's continued fraction (the Thompson-Barnett CF2 form) up
to ``|z| = 25`` and the Hankel asymptotic series beyond.  All branches accept
complex arguments in the right half-plane, which the hyperbolic model needs
for its shifted transform.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _sp_integrate

EULER_GAMMA = 0.57721566490153286061
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SERIES_TERMS = 30
_CF_MAXIT = 2000
_ASYMPTOTIC_FROM = 25.0
_ASYMPTOTIC_TERMS = 24
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class NumericalUnderflowWarning(RuntimeWarning):
    """A special function result underflowed to zero."""


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 500
    truncation_bound: float = 1e5

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.truncation_bound > 0:
            raise ValueError("truncation_bound must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


# ---------------------------------------------------------------------------
# Modified Bessel functions K0, K1
# ---------------------------------------------------------------------------

def _k01_series(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """K0(z), K1(z) from the ascending series; accurate for |z| <= 2."""
    y = 0.25 * z * z
    log_half = np.log(0.5 * z)
    i0 = np.zeros_like(z)
    i1 = np.zeros_like(z)
    k0_sum = np.zeros_like(z)
    k1_sum = np.zeros_like(z)
    term0 = np.ones_like(z)  # y^k / (k!)^2
    term1 = np.ones_like(z)  # y^k / (k! (k+1)!)
    harmonic = 0.0  # H_k
    for k in range(_SERIES_TERMS):
        if k > 0:
            term0 = term0 * y / (k * k)
            term1 = term1 * y / (k * (k + 1))
            harmonic += 1.0 / k
        i0 = i0 + term0
        i1 = i1 + term1
        k0_sum = k0_sum + harmonic * term0
        # psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        k1_sum = k1_sum + (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * EULER_GAMMA) * term1
    i1 = 0.5 * z * i1
    k0 = -(log_half + EULER_GAMMA) * i0 + k0_sum
    k1 = 1.0 / z + log_half * i1 - 0.25 * z * k1_sum
    return k0, k1


def _k01e_steed(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exponentially scaled e^z K0(z), e^z K1(z) by Steed's CF2, |z| > 2."""
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(z)
    q2 = np.ones_like(z)
    a1 = 0.25
    q = np.full_like(z, a1)
    c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _CF_MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = s + dels
        if np.all(np.abs(dels) <= 1e-17 * np.abs(s)):
            break
    else:  # pragma: no cover - CF2 converges in well under 100 steps for |z|>2
        raise ArithmeticError("Bessel K continued fraction did not converge")
    h = a1 * h
    k0e = np.sqrt(np.pi / (2.0 * z)) / s
    k1e = k0e * (z + 0.5 - h) / z
    return k0e, k1e


def _k01e_asymptotic(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hankel asymptotic expansion of e^z K0, e^z K1; used for |z| >= 25."""
    pref = np.sqrt(np.pi / (2.0 * z))
    out = []
    for four_nu2 in (0.0, 4.0):
        total = np.ones_like(z)
        term = np.ones_like(z)
        for k in range(1, _ASYMPTOTIC_TERMS):
            term = term * (four_nu2 - (2 * k - 1) ** 2) / (8.0 * k * z)
            total = total + term
        out.append(pref * total)
    return out[0], out[1]


def bessel_k01e(z):
    """Scaled pair ``(e^z K0(z), e^z K1(z))`` for real or complex ``z``.

    ``z`` must lie in the open right half-plane.  Arrays are evaluated
    elementwise; the result has the shape and dtype kind of ``z``.
    """
    z = np.asarray(z)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).astype(np.complex128 if np.iscomplexobj(z) else np.float64)
    if np.any(z.real <= 0):
        raise ValueError("Bessel K requires Re(z) > 0")
    k0e = np.empty_like(z)
    k1e = np.empty_like(z)
    small = np.abs(z) <= 2.0
    if small.any():
        zs = z[small]
        k0, k1 = _k01_series(zs)
        scale = np.exp(zs)
        k0e[small] = k0 * scale
        k1e[small] = k1 * scale
    large = np.abs(z) >= _ASYMPTOTIC_FROM
    if large.any():
        k0e[large], k1e[large] = _k01e_asymptotic(z[large])
    middle = ~(small | large)
    if middle.any():
        k0e[middle], k1e[middle] = _k01e_steed(z[middle])
    if scalar:
        return k0e[0], k1e[0]
    return k0e, k1e


def bessel_k1e(z):
    """``e^z K1(z)``; avoids the underflow of :func:`bessel_k1` for large z."""
    return bessel_k01e(z)[1]


def bessel_k0(z: float) -> float:
    if z <= 0:
        raise ValueError(f"bessel_k0 domain error: z={z!r} must be > 0")
    return float(bessel_k01e(float(z))[0]) * math.exp(-z)


def bessel_k1(z: float) -> float:
    """Modified Bessel function of the third kind, order one, for real z > 0.

    Returns 0.0 and emits :class:`NumericalUnderflowWarning` once the value
    drops below the smallest subnormal double (around z = 705).
    """
    if not z > 0:
        raise ValueError(f"bessel_k1 domain error: z={z!r} must be > 0")
    value = float(bessel_k1e(float(z))) * math.exp(-z)
    if value == 0.0:
        warnings.warn(f"K1({z}) underflows to 0", NumericalUnderflowWarning, stacklevel=2)
    return value


# ---------------------------------------------------------------------------
# Standard normal
# ---------------------------------------------------------------------------

def std_normal_cdf(x: float) -> float:
    # erfc keeps full relative accuracy in the lower tail
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def std_normal_pdf(x: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def integrate(f: Callable[[float], float], a: float, b: float,
              spec: QuadratureSpec = DEFAULT_QUADRATURE, points=None) -> float:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    Infinite limits use the QUADPACK ``x = a + (1-t)/t`` map.  ``points``
    lists interior break points (finite ranges only).  Raises
    :class:`QuadratureError` when the error estimate stays above
    ``max(abs_tol, rel_tol * |result|)`` after ``max_subdivisions``.
    """
    if not a < b:
        raise ValueError(f"integrate requires a < b, got [{a}, {b}]")
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions, full_output=1)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = [p for p in points if a < p < b]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sp_integrate.IntegrationWarning)
        out = _sp_integrate.quad(f, a, b, **kwargs)
    value, err = out[0], out[1]
    if not math.isfinite(value):
        raise QuadratureError("non-finite integral", value, err)
    if len(out) > 3 and err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError(f"quadrature did not converge on [{a}, {b}]", value, err)
    return value


def gauss_legendre_panels(lo: float, hi: float, width: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite 20-point Gauss-Legendre nodes and weights on ``[lo, hi]``."""
    n = max(1, int(math.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, n + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def decay_cutoff(envelope: Callable[[np.ndarray], np.ndarray], threshold: float,
                 limit: float) -> float:
    """Smallest power of two ``U`` past which ``|envelope|`` stays below ``threshold``.

    ``envelope`` is sampled on ``[U/2, U]``; raises :class:`QuadratureError`
    if no such ``U <= limit`` exists.
    """
    u = 1.0
    while u <= limit:
        probe = np.linspace(0.5 * u, u, 33)
        if np.max(np.abs(envelope(probe))) < threshold:
            # the tail must also keep decaying over the next octave
            nxt = np.linspace(u, 2.0 * u, 33)
            if np.max(np.abs(envelope(nxt))) < threshold:
                return u
        u *= 2.0
    raise QuadratureError("integrand envelope does not decay before truncation_bound",
                          float("nan"), float("inf"))


class CosineInverter:
    """Reusable ``x -> (1/pi) int_0^inf cos(u x) phi_t(u) du``.

    Nodes are laid out once for ``|x| <= x_max``: the range is cut where the
    envelope ``|phi_t|`` falls below ``abs_tol / 100`` and split into
    half-periods of ``cos(u x_max)`` (at most unit width), each carrying a
    20-point Gauss-Legendre rule.  ``phi_t`` is evaluated once, on arrays.
    """

    def __init__(self, phi_t: Callable[[np.ndarray], np.ndarray], x_max: float,
                 spec: QuadratureSpec = DEFAULT_QUADRATURE):
        self.x_max = abs(x_max)
        self.cutoff = decay_cutoff(phi_t, spec.abs_tol / 100.0, spec.truncation_bound)
        width = min(1.0, math.pi / self.x_max) if self.x_max > 0 else 1.0
        self.nodes, weights = gauss_legendre_panels(0.0, self.cutoff, width)
        values = np.asarray(phi_t(self.nodes), dtype=float)
        if not np.all(np.isfinite(values)):
            raise QuadratureError("phi_t returned non-finite values", float("nan"), float("inf"))
        self._coef = weights * values / math.pi

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > self.x_max * (1 + 1e-12)):
            raise ValueError(f"|x| exceeds the inverter range {self.x_max}")
        if x.ndim == 0:
            return float(np.dot(self._coef, np.cos(self.nodes * float(x))))
        out = np.empty(x.shape)
        flat = x.ravel()
        res = out.ravel()
        for i in range(0, flat.size, 64):
            chunk = flat[i:i + 64]
            res[i:i + 64] = np.cos(np.outer(chunk, self.nodes)) @ self._coef
        return res.reshape(x.shape)


def fourier_cosine_density(phi_t: Callable[[np.ndarray], np.ndarray], x: float,
                           spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Density ``(1/pi) * int_0^inf cos(u x) phi_t(u) du`` of a symmetric law.

    ``phi_t`` must accept numpy arrays.  Raises :class:`QuadratureError` if
    ``phi_t`` has not decayed below ``abs_tol / 100`` by
    ``spec.truncation_bound``.
    """
    return CosineInverter(phi_t, x, spec)(x)


# ---------------------------------------------------------------------------
# Minimization
# ---------------------------------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(g: Callable[[float], float], lo: float, hi: float,
                   tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - _INV_PHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INV_PHI * (b - a)
            gd = g(d)
    return (c, gc) if gc <= gd else (d, gd)


def minimize_scalar(g: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-10, grid: int = 512) -> tuple[float, float]:
    """Global-ish minimizer of ``g`` on ``[lo, hi]``.

    A ``grid``-point scan locates the best cell, then golden-section search
    refines within the two neighbouring cells.  The better of the grid point
    and the refined point is returned as ``(argmin, min)``.
    """
    if not lo < hi:
        raise ValueError("minimize_scalar requires lo < hi")
    xs = np.linspace(lo, hi, grid)
    values = [g(float(x)) for x in xs]
    k = int(np.argmin(values))
    best_x, best_v = float(xs[k]), values[k]
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, grid - 1)])
    x, v = golden_section(g, a, b, tol)
    if v < best_v:
        return x, v
    return best_x, best_v
