"""Hyperbolic Levy motion ``S_t = s0 exp(Z_t)``.

``Z_1`` has the symmetric centred hyperbolic density

    h(x; zeta, delta) = exp(-zeta sqrt(1 + (x/delta)^2)) / (2 delta K1(zeta))

with characteristic function

    phi(u) = zeta K1(w) / (K1(zeta) w),   w = sqrt(zeta^2 + delta^2 u^2),

and ``Z_t`` has characteristic function ``phi^t``.  The same expression at
``u = -i`` gives ``M = E e^{Z_1}``, finite because ``delta < zeta``.

Densities of ``Z_t`` come from Fourier inversion.  Inverting ``phi^t`` on the
real axis gives ``f_t`` to an absolute accuracy of about 1e-17, which is
useless for ``e^x f_t(x)`` far in the right tail when the tail rate
``zeta/delta`` is close to 1.  The tilted density is therefore inverted
along the shifted contour ``u - i``, whose transform ``phi^t(u - i)`` is
exactly the transform of ``e^x f_t(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import MarketParams
from ..measures import LogReturnLaw, TiltedLaw
from ..numerics import (DEFAULT_QUADRATURE, CosineInverter, QuadratureError, QuadratureSpec,
                        bessel_k01e, gauss_legendre_panels, integrate)
from .specs import HyperbolicSpec

_TAIL_EXPONENT = 40.0  # window edges sit where tails are ~e^-40
_ENVELOPE_FLOOR = 1e-17
_MAX_PHASE = 24.0  # radians of e^{iux} per 20-node panel (rule error ~1e-15)
_CUTOFF_LIMIT = 4096.0  # largest frequency tabulated; bounds the node count


def _require_mgf(spec: HyperbolicSpec) -> None:
    if not spec.delta < spec.zeta:
        raise ValueError(f"E e^Z diverges unless delta < zeta (zeta={spec.zeta}, delta={spec.delta})")


def hyperbolic_density(spec: HyperbolicSpec, x):
    """``h(x; zeta, delta)``; accepts scalars or arrays."""
    z, d = spec.zeta, spec.delta
    k1e = float(bessel_k01e(z)[1])
    x = np.asarray(x, dtype=float)
    out = np.exp(z - z * np.sqrt(1.0 + (x / d) ** 2)) / (2.0 * d * k1e)
    return float(out) if out.ndim == 0 else out


def _log_k1e_over_w(w):
    return np.log(bessel_k01e(w)[1]) - np.log(w)


def log_cf(spec: HyperbolicSpec, u):
    """``ln phi(u)`` for real or complex ``u`` in the strip ``|Im u| < zeta/delta``.

    Assembled from logarithms of the scaled Bessel function, so it is the
    continuous branch along any path in the strip and ``phi^t`` is
    ``exp(t * log_cf)``.
    """
    z, d = spec.zeta, spec.delta
    u = np.asarray(u)
    w = np.sqrt(z * z + d * d * u * u + 0j) if np.iscomplexobj(u) else np.sqrt(z * z + d * d * u * u)
    base = math.log(z) + z - float(np.log(bessel_k01e(z)[1]))
    return base + _log_k1e_over_w(w) - w


def hyperbolic_cf(spec: HyperbolicSpec, u):
    """Characteristic function ``phi(u; zeta, delta)`` on the real line."""
    out = np.exp(log_cf(spec, np.asarray(u, dtype=float)))
    return float(out) if out.ndim == 0 else out


def hyperbolic_mgf_base(spec: HyperbolicSpec) -> float:
    """``M = E e^{Z_1} = zeta K1(sqrt(zeta^2 - delta^2)) / (K1(zeta) sqrt(zeta^2 - delta^2))``."""
    _require_mgf(spec)
    z, d = spec.zeta, spec.delta
    w = math.sqrt(z * z - d * d)
    k1e_z = float(bessel_k01e(z)[1])
    k1e_w = float(bessel_k01e(w)[1])
    return z / w * k1e_w / k1e_z * math.exp(z - w)


def hyperbolic_variance(spec: HyperbolicSpec) -> float:
    """``Var Z_1 = delta^2 K2(zeta) / (zeta K1(zeta))``."""
    z = spec.zeta
    k0e, k1e = (float(v) for v in bessel_k01e(z))
    k2e = k0e + 2.0 * k1e / z
    return spec.delta ** 2 * k2e / (z * k1e)


def min_horizon(spec: HyperbolicSpec) -> float:
    """Shortest horizon whose transform decays to 1e-17 by the frequency limit.

    ``|phi(u)|^T`` falls off like ``exp(-T delta u)``, so as ``T -> 0`` the
    inversion needs ever more frequencies; below this horizon the law is
    refused rather than computed with a truncated transform.
    """
    u = 0.95 * _CUTOFF_LIMIT  # margin so the envelope is strictly below the floor at the limit
    per_unit = -max(float(log_cf(spec, np.array([u]))[0]),
                    float(log_cf(spec, np.array([u - 1j]))[0].real))
    return -math.log(_ENVELOPE_FLOOR) / per_unit


@dataclass(frozen=True)
class _Window:
    lo: float
    hi: float


class HyperbolicLevyLaw:
    """Fourier representation of ``Y = Z_T - T ln M`` and of its tilt.

    Both the plain transform ``phi^T(u)`` and the shifted one
    ``phi^T(u - i) / M^T`` are tabulated once on a composite Gauss-Legendre
    rule.  Densities come from cosine/exponential sums, distribution
    functions from the Gil-Pelaez formula, so nothing is interpolated.
    """

    def __init__(self, spec: HyperbolicSpec, T: float):
        _require_mgf(spec)
        if not T > 0:
            raise ValueError(f"horizon must be > 0, got {T}")
        if T < min_horizon(spec):
            raise ValueError(f"horizon {T} is below the shortest invertible horizon "
                             f"{min_horizon(spec):.4g} for {spec}")
        self.spec = spec
        self.T = T
        self.log_m = math.log(hyperbolic_mgf_base(spec))
        self.shift = T * self.log_m  # Y = Z_T - shift
        alpha = spec.alpha
        sd = math.sqrt(T * hyperbolic_variance(spec))
        self.window = _Window(
            lo=-self.shift - (_TAIL_EXPONENT / alpha + 10.0 * sd),
            hi=-self.shift + (_TAIL_EXPONENT / (alpha - 1.0) + 10.0 * sd),
        )
        reach = max(abs(self.window.lo), abs(self.window.hi)) + abs(self.shift)
        self.reach = reach

        cutoff = self._frequency_cutoff()
        nodes, weights = gauss_legendre_panels(0.0, cutoff, min(0.5, _MAX_PHASE / reach))
        self.nodes = nodes
        plain = np.exp(T * log_cf(spec, nodes))
        # transform of f0: e^{-iu shift} phi^T(u); of f1: e^{-(1+iu) shift} phi^T(u - i)
        shifted = np.exp(T * log_cf(spec, nodes - 1j) - (1.0 + 1j * nodes) * self.shift)
        self._plain = weights * plain / math.pi
        self._shifted_re = weights * shifted.real / math.pi
        self._shifted_im = weights * shifted.imag / math.pi
        self.exp_moment = float(np.exp(T * log_cf(spec, np.array([-1j])) - self.shift)[0].real)

    def _frequency_cutoff(self) -> float:
        """Frequency past which both ``|phi^T(u)|`` and ``|phi^T(u - i)|`` stay below 1e-17.

        The envelope is sampled once on 32 points per octave up to twice
        the frequency limit, so the cutoff is exact to 1/32 of an octave.
        """
        octaves = int(math.log2(_CUTOFF_LIMIT)) + 1
        probe = np.concatenate([np.linspace(2.0 ** (k - 1), 2.0 ** k, 33)[1:]
                                for k in range(-4, octaves + 1)])
        env = np.maximum(np.exp(self.T * log_cf(self.spec, probe)),
                         np.abs(np.exp(self.T * log_cf(self.spec, probe - 1j))))
        above = np.nonzero(env >= _ENVELOPE_FLOOR)[0]
        last = int(above[-1]) if above.size else -1
        if last + 1 >= probe.size or probe[last + 1] > _CUTOFF_LIMIT:
            raise QuadratureError("transform does not decay below the frequency limit",
                                  float("nan"), float("inf"))
        return float(probe[last + 1])

    def _apply(self, y, kernel):
        y = np.asarray(y, dtype=float)
        flat = np.atleast_1d(y).ravel()
        out = np.empty(flat.shape)
        for i in range(0, flat.size, 32):
            out[i:i + 32] = kernel(flat[i:i + 32, None])
        return float(out[0]) if y.ndim == 0 else out.reshape(y.shape)

    def pdf0_direct(self, y):
        """``f0`` from the real-axis transform alone (absolute error ~1e-17)."""
        return self._apply(y, lambda c: np.cos(self.nodes * (c + self.shift)) @ self._plain)

    def pdf0(self, y):
        """``f0``; for ``y > 0`` taken as ``e^{-y} f1(y)``.

        Both representations have a tiny absolute error, but only the second
        keeps it below ``f0`` in the right tail, where ``e^y f0`` is integrated.
        """
        def kernel(c):
            plain = np.cos(self.nodes * (c + self.shift)) @ self._plain
            tilted = np.exp(-c[:, 0]) * self._tilted_sum(c)
            return np.where(c[:, 0] > 0.0, tilted, plain)
        return self._apply(y, kernel)

    def cdf0(self, y):
        def kernel(c):
            x = c + self.shift
            return 0.5 + np.sin(self.nodes * x) / self.nodes @ self._plain
        return np.clip(self._apply(y, kernel), 0.0, 1.0)

    def _tilted_sum(self, c):
        # Re[e^{-iuy} chi(u)] = cos(uy) Re chi + sin(uy) Im chi
        phase = self.nodes * c
        return np.cos(phase) @ self._shifted_re + np.sin(phase) @ self._shifted_im

    def pdf1(self, y):
        return self._apply(y, self._tilted_sum)

    def cdf1(self, y):
        def kernel(c):
            # Im[e^{-iuy} chi(u)] = cos(uy) Im chi - sin(uy) Re chi
            phase = self.nodes * c
            return 0.5 - (np.cos(phase) / self.nodes @ self._shifted_im
                          - np.sin(phase) / self.nodes @ self._shifted_re)
        return np.clip(self._apply(y, kernel), 0.0, 1.0)

    def motion_density(self, x):
        """Density ``f_T`` of ``Z_T`` itself."""
        return self.pdf0_direct(np.asarray(x, dtype=float) - self.shift)

    def log_return_law(self) -> LogReturnLaw:
        def as_float(fn):
            return lambda y: float(fn(float(y)))

        return LogReturnLaw(
            cdf=as_float(self.cdf0),
            pdf=as_float(self.pdf0),
            window=(self.window.lo, self.window.hi),
            closed_form_tilt=TiltedLaw(cdf=as_float(self.cdf1), pdf=as_float(self.pdf1)),
            exp_moment=self.exp_moment,
            center=-self.shift,
            label=f"hyperbolic(zeta={self.spec.zeta}, delta={self.spec.delta}, T={self.T})",
        )


def hyperbolic_law(spec: HyperbolicSpec, tau: float) -> LogReturnLaw:
    return HyperbolicLevyLaw(spec, tau).log_return_law()


def motion_inverter(spec: HyperbolicSpec, t: float, x_max: float,
                    qspec: QuadratureSpec = DEFAULT_QUADRATURE) -> CosineInverter:
    """Real-axis cosine inversion of ``phi^t``, valid for ``|x| <= x_max``."""
    return CosineInverter(lambda u: np.exp(t * log_cf(spec, u)), x_max, qspec)


def _motion_windows(spec: HyperbolicSpec, t: float) -> tuple[float, float]:
    """Half-widths ``(left, right_tilted)`` past which ``f_t`` / ``e^x f_t`` are negligible."""
    sd = math.sqrt(t * hyperbolic_variance(spec))
    alpha = spec.alpha
    return _TAIL_EXPONENT / alpha + 10.0 * sd, _TAIL_EXPONENT / (alpha - 1.0) + 10.0 * sd


def motion_total_mass(spec: HyperbolicSpec, t: float,
                      qspec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``int f_t(x) dx`` with ``f_t`` from real-axis cosine inversion."""
    half, _ = _motion_windows(spec, t)
    inv = motion_inverter(spec, t, half, qspec)
    return 2.0 * integrate(inv, 0.0, half, qspec)


def martingale_moment(spec: HyperbolicSpec, t: float,
                      qspec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``int e^x f_t(x) dx`` by quadrature of inverted densities.

    The negative half line uses the real-axis inversion of ``phi^t``; the
    positive half uses the contour-shifted inversion, where ``e^x`` would
    otherwise amplify the real-axis error.
    """
    left, right = _motion_windows(spec, t)
    inv = motion_inverter(spec, t, left, qspec)
    neg = integrate(lambda x: math.exp(x) * inv(x), -left, 0.0, qspec)
    law = HyperbolicLevyLaw(spec, t)
    m_t = math.exp(law.shift)
    # e^x f_t(x) = M^t f1(x - t ln M)
    pos = m_t * integrate(lambda x: float(law.pdf1(x - law.shift)), 0.0, right, qspec)
    return neg + pos


def hyperbolic_price(spec: HyperbolicSpec, market: MarketParams,
                     qspec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """B-price ``s0 int_a^inf e^x f0 - X e^{-rT} int_a^inf f0`` with ``a = ln(X/s0) - rT``.

    ``f0(x) = f_T(x + T ln M)`` comes from real-axis cosine inversion and
    both integrals are adaptive quadratures in ``x``.  The first is taken as
    ``1 - int_{-inf}^a e^x f0`` (``E e^Y = 1``), which keeps ``e^x`` bounded
    by ``e^a`` where the inverted density is used.
    """
    if market.t0 != 0.0:
        raise ValueError("hyperbolic prices assume t0 = 0; shift the time origin so t0 = 0")
    T = market.T
    shift = T * math.log(hyperbolic_mgf_base(spec))
    a = -market.log_moneyness
    half, _ = _motion_windows(spec, T)
    lo, hi = -shift - half, -shift + half
    inv = motion_inverter(spec, T, max(half, abs(a + shift)), qspec)

    def f0(y: float) -> float:
        return inv(y + shift)

    peak = [-shift]
    if a >= hi:
        cash, below = 0.0, 1.0
    elif a <= lo:
        cash, below = 1.0, 0.0
    else:
        cash = integrate(f0, a, hi, qspec, points=peak)
        below = integrate(lambda y: math.exp(y) * f0(y), lo, a, qspec, points=peak)
    return market.s0 * (1.0 - below) - market.discounted_strike * cash
