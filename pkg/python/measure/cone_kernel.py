"""Cone measures through the kernel H(r, s) = ∫_s^∞ e^{-(r²+t²)^{p/2}/p} dt.

For the cone {x_n >= |x'| tan α - ε} the measure reduces to a single radial
integral over r = |x'|:

    μ = c(n,p) |S^{n-2}| ∫_0^∞ r^{n-2} H(r, r tan α - ε) dr.

Expanding in the drop ε gives I0 + ε I1 + (ε²/2) I2 + O(ε³) with
I1 = c1 cos^{n-1} α and I2 = c2 sin α cos^{n-1} α, where c_k are the radial
moments ∫_0^∞ t^{m-1} e^{-t^p/p} dt = p^{m/p-1} Γ(m/p) for m = n-1, n+p-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy import integrate

from python import settings
from python.bounds.bound_formulas import BoundParams
from python.errors import DimensionMismatch, InvalidParams
from python.geometry.bodies import TruncatedCone
from python.measure.gaussian_measure import DETERMINISTIC, MeasureValue, log_normalization, log_sphere_area
from python.measure.quadrature import gauss_panel
from python.specfun.gamma_functions import log_gamma, upper_inc_gamma_regularized

QUAD_LIMIT = 400


@dataclass(frozen=True)
class ExpansionCoefficients:
    alpha: float
    I0: float
    I1: float
    I2: float
    c0: float
    c1: float
    c2: float
    M: float
    I1_quadrature: float
    I2_quadrature: float


def _density(r: float, t: float, p: float) -> float:
    return math.exp(-((r * r + t * t) ** (0.5 * p)) / p)


def radial_moment(m: float, p: float) -> float:
    """∫_0^∞ t^{m-1} e^{-t^p/p} dt."""
    return math.exp((m / p - 1.0) * math.log(p) + log_gamma(m / p))


def _tail_bound(T: float, p: float) -> float:
    """∫_T^∞ e^{-t^p/p} dt for T >= 0, an upper bound for the kernel tail at any r."""
    s = 1.0 / p
    return radial_moment(1.0, p) * upper_inc_gamma_regularized(s, T ** p / p)


def _kernel_cutoff(s: float, p: float, tol: float) -> float:
    T = max(s, 1.0)
    for _ in range(200):
        if _tail_bound(T, p) < tol / 10.0:
            return T
        T *= 1.25
    return T


def kernel_H_with_error(r: float, s: float, p: float, tol: Optional[float] = None) -> Tuple[float, float]:
    if not p >= 1.0:
        raise InvalidParams(f"p must be >= 1, got {p!r}")
    if not r >= 0.0:
        raise InvalidParams(f"r must be >= 0, got {r!r}")
    tol = tol or settings.RADIAL_TOL * 1e-2
    T = _kernel_cutoff(s, p, tol)
    if s >= T:
        value, err = integrate.quad(lambda t: _density(r, t, p), s, math.inf, epsabs=tol, epsrel=1e-13, limit=QUAD_LIMIT)
        return value, err
    value = 0.0
    err = _tail_bound(T, p)
    if s < 0.0:
        v, e = integrate.quad(lambda t: _density(r, t, p), s, 0.0, epsabs=tol, epsrel=1e-13, limit=QUAD_LIMIT)
        value += v
        err += e
    v, e = integrate.quad(lambda t: _density(r, t, p), max(s, 0.0), T, epsabs=tol, epsrel=1e-13, limit=QUAD_LIMIT)
    return value + v, err + e


def kernel_H(r: float, s: float, p: float) -> float:
    return kernel_H_with_error(r, s, p)[0]


def _window(r: float, lo: float, hi: float, p: float, tol: float) -> Tuple[float, float]:
    if hi <= lo:
        return 0.0, 0.0
    return integrate.quad(lambda t: _density(r, t, p), lo, hi, epsabs=tol, epsrel=1e-13, limit=QUAD_LIMIT)


def _radial_cutoff(n: int, p: float, tol: float) -> float:
    """Radius beyond which μ_p carries less than tol/10."""
    s = n / p
    r = 1.0
    for _ in range(200):
        if upper_inc_gamma_regularized(s, r ** p / p) < tol / 10.0:
            return r
        r *= 1.25
    return r


def _cap_exit(tan_a: float, eps: float, R: float) -> float:
    """Radius where the slanted face r tan α - ε meets the sphere of radius R."""
    k = 1.0 + tan_a * tan_a
    disc = (eps * tan_a) ** 2 - k * (eps * eps - R * R)
    return min(R, (eps * tan_a + math.sqrt(max(disc, 0.0))) / k)


def _cone_integral(n: int, p: float, alpha: float, eps: float, R: float, tol: float) -> Tuple[float, float]:
    """∫ r^{n-2} (t-window of the cone at r) dr, unnormalized."""
    tan_a = math.tan(alpha)
    r_max = _radial_cutoff(n, p, tol)
    if math.isfinite(R):
        r_max = min(r_max, _cap_exit(tan_a, eps, R))
    inner_tol = tol * 1e-2
    inner_err = [0.0]

    def integrand(r: float) -> float:
        s = r * tan_a - eps
        if math.isfinite(R):
            cap = math.sqrt(max(R * R - r * r, 0.0))
            value, e = _window(r, max(s, -cap), cap, p, inner_tol)
        else:
            value, e = kernel_H_with_error(r, s, p, inner_tol)
        inner_err[0] = max(inner_err[0], e)
        return r ** (n - 2) * value

    kink = eps / tan_a
    points = [kink] if 0.0 < kink < r_max else None
    value, err = integrate.quad(integrand, 0.0, r_max, points=points, epsabs=tol * 1e-1, epsrel=1e-12, limit=QUAD_LIMIT)
    err += inner_err[0] * r_max ** (n - 1) / (n - 1)
    return value, err


@lru_cache(maxsize=1024)
def _cone_measure_cached(cone: TruncatedCone, params: BoundParams, tol: float) -> MeasureValue:
    n, p = params.n, params.p
    integral, err = _cone_integral(n, p, cone.alpha, cone.eps, cone.R, tol)
    scale = math.exp(log_normalization(n, p) + log_sphere_area(n - 1))
    value = scale * integral
    abs_error = scale * err + tol / 10.0
    return MeasureValue(min(max(value, 0.0), 1.0), abs_error, DETERMINISTIC)


def cone_measure(cone: TruncatedCone, params: BoundParams, tol: Optional[float] = None) -> MeasureValue:
    """μ_p of a (possibly truncated) cone; finite R restricts each t-window to the ball."""
    if cone.dim != params.n:
        raise DimensionMismatch(f"cone dimension {cone.dim} does not match n={params.n}")
    return _cone_measure_cached(cone, params, float(tol or settings.RADIAL_TOL))


def expansion_coefficients(params: BoundParams, alpha: float, tol: Optional[float] = None) -> ExpansionCoefficients:
    if not 0.0 < alpha < math.pi / 2.0:
        raise InvalidParams(f"cone angle must lie in (0, pi/2), got {alpha!r}")
    n, p = params.n, params.p
    tol = float(tol or settings.RADIAL_TOL)
    cos_a, sin_a = math.cos(alpha), math.sin(alpha)

    I0, _ = _cone_integral(n, p, alpha, 0.0, math.inf, tol)
    c0 = radial_moment(n, p)
    c1 = radial_moment(n - 1.0, p)
    c2 = radial_moment(n + p - 2.0, p)

    def slope(r: float) -> float:
        return r ** (n - 2) * math.exp(-((r / cos_a) ** p) / p)

    def curvature(r: float) -> float:
        return r ** (n - 2) * (r * sin_a / cos_a) * (r / cos_a) ** (p - 2.0) * math.exp(-((r / cos_a) ** p) / p)

    I1_quad, _ = integrate.quad(slope, 0.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=QUAD_LIMIT)
    I2_quad, _ = integrate.quad(curvature, 0.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=QUAD_LIMIT)

    return ExpansionCoefficients(
        alpha=alpha,
        I0=I0,
        I1=c1 * cos_a ** (n - 1),
        I2=c2 * sin_a * cos_a ** (n - 1),
        c0=c0,
        c1=c1,
        c2=c2,
        M=math.exp(log_sphere_area(n - 1)) * I0,
        I1_quadrature=I1_quad,
        I2_quadrature=I2_quad,
    )


def coarea_I0(params: BoundParams, alpha: float) -> float:
    """c0 ∫_0^{π/2-α} sin^{n-2} θ dθ."""
    n = params.n
    angle, _ = integrate.quad(lambda t: math.sin(t) ** (n - 2), 0.0, math.pi / 2.0 - alpha, epsabs=0.0, epsrel=1e-13)
    return radial_moment(n, params.p) * angle


def second_order_coefficient(coeffs: ExpansionCoefficients, q: float) -> float:
    """I2/I0 + (q-1) I1²/I0²; positive means the q-deficit turns negative for small drops."""
    u = coeffs.I1 / coeffs.I0
    return coeffs.I2 / coeffs.I0 + (q - 1.0) * u * u


def predicted_deficit(coeffs: ExpansionCoefficients, params: BoundParams, q: float, lam: float, eps: float) -> float:
    m_norm = math.exp(log_normalization(params.n, params.p)) * coeffs.M
    return -0.5 * q * m_norm ** q * second_order_coefficient(coeffs, q) * lam * (1.0 - lam) * eps * eps


def expansion_residual(params: BoundParams, alpha: float, eps: float, lam: float = 0.0,
                       tol: Optional[float] = None) -> float:
    """μ(λA + (1-λ)B) - M(1 + (1-λ)(I1/I0)ε + (1-λ)²(I2/2I0)ε²), unnormalized.

    Evaluated as a single radial integral of the window remainder
    ∫_{s-δ}^{s} e dt - δ e(s) - (δ²/2) e'(s), δ = (1-λ)ε, so no large
    measures are subtracted.
    """
    if not 0.0 < alpha < math.pi / 2.0:
        raise InvalidParams(f"cone angle must lie in (0, pi/2), got {alpha!r}")
    if not 0.0 <= lam <= 1.0:
        raise InvalidParams(f"lambda must lie in [0, 1], got {lam!r}")
    n, p = params.n, params.p
    tol = float(tol or settings.RADIAL_TOL)
    delta = (1.0 - lam) * eps
    tan_a = math.tan(alpha)
    r_max = _radial_cutoff(n, p, tol * 1e-3)

    def remainder(r: float) -> float:
        s = r * tan_a
        rho2 = r * r + s * s
        e0 = math.exp(-(rho2 ** (0.5 * p)) / p)
        e2 = s * rho2 ** (0.5 * p - 1.0) * e0 if rho2 > 0.0 else 0.0
        window = gauss_panel(lambda t: _vector_density(r, t, p), s - delta, s, 24)
        return r ** (n - 2) * (window - delta * e0 - 0.5 * delta * delta * e2)

    kink = delta / tan_a
    points = [kink] if 0.0 < kink < r_max else None
    value, _ = integrate.quad(remainder, 0.0, r_max, points=points, epsabs=0.0, epsrel=1e-10, limit=QUAD_LIMIT)
    return math.exp(log_sphere_area(n - 1)) * value


def _vector_density(r: float, t: np.ndarray, p: float) -> np.ndarray:
    return np.exp(-np.power(r * r + np.asarray(t) ** 2, 0.5 * p) / p)
