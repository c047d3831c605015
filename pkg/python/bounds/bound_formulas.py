"""Closed-form lower and upper bounds on the Brunn-Minkowski exponent of μ_p.

The lower bound is f1(n) = (1/n) e^a a^{n/p} Γ(1 - n/p, a) with a = (p-1)n/p,
equivalently (1/n) ∫_0^∞ (1 + s/a)^{-n/p} e^{-s} ds. The upper bound is
f2(n) = 1 - (p/(n-1)) Γ(n/p) Γ((n+p-2)/p) / Γ((n-1)/p)^2. Both vanish at
p = 1 and tend to the classical exponent 1/n as p grows, which recovers the
Brunn-Minkowski inequality for volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from python.errors import ConvergenceError, InvalidParams
from python.specfun.gamma_functions import log_gamma, log_scaled_upper_gamma

CLOSED_FORM = "closed-form"
INTEGRAL = "integral-representation"
LIMIT_P1 = "limit-p1"

# closed-form route up to this n/p
ROUTE_SWITCH = 150.0
TAIL_CUT = 60.0


@dataclass(frozen=True)
class BoundParams:
    n: int
    p: float

    def __post_init__(self) -> None:
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int):
            if isinstance(n, float) and n.is_integer():
                object.__setattr__(self, "n", int(n))
            else:
                raise InvalidParams(f"dimension n must be an integer, got {n!r}")
        if self.n < 2:
            raise InvalidParams(f"dimension n must be >= 2, got {self.n}")
        p = float(self.p)
        if not math.isfinite(p) or p < 1.0:
            raise InvalidParams(f"exponent p must be a finite real >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def a(self) -> float:
        return (self.p - 1.0) * self.n / self.p

    @property
    def ratio(self) -> float:
        return self.n / self.p

    @property
    def is_p1(self) -> bool:
        return self.p == 1.0


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    method: str

    @property
    def interval(self) -> tuple[float, float]:
        return self.lower, self.upper


def _as_params(params: BoundParams | tuple) -> BoundParams:
    if isinstance(params, BoundParams):
        return params
    n, p = params
    return BoundParams(n, p)


def lower_bound_route(params: BoundParams) -> str:
    params = _as_params(params)
    if params.is_p1:
        return LIMIT_P1
    return INTEGRAL if params.ratio > ROUTE_SWITCH else CLOSED_FORM


def lower_bound_closed_form(params: BoundParams) -> float:
    params = _as_params(params)
    if params.is_p1:
        return 0.0
    a = params.a
    k = params.ratio
    log_value = log_scaled_upper_gamma(1.0 - k, a) + k * math.log(a) - math.log(params.n)
    return math.exp(log_value)


def lower_bound_integral(params: BoundParams) -> float:
    params = _as_params(params)
    if params.is_p1:
        return 0.0
    a = params.a
    k = params.ratio

    def integrand(s: float) -> float:
        return math.exp(-k * math.log1p(s / a) - s)

    # decays on the scale (p-1)/p near the origin; below e^{-s} everywhere
    scale = (params.p - 1.0) / params.p
    cuts = [0.0, scale, 10.0 * scale, TAIL_CUT]
    total = 0.0
    err = math.exp(-TAIL_CUT)
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        val, e = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
        err += e
    if not math.isfinite(total) or err > 1e-9 * abs(total):
        raise ConvergenceError(f"lower bound integral did not converge for n={params.n}, p={params.p}")
    return total / params.n


def lower_bound_pair(params: BoundParams, method: str | None = None) -> tuple[float, str]:
    params = _as_params(params)
    route = method or lower_bound_route(params)
    if params.is_p1:
        return 0.0, LIMIT_P1
    if route == CLOSED_FORM:
        return lower_bound_closed_form(params), CLOSED_FORM
    if route == INTEGRAL:
        return lower_bound_integral(params), INTEGRAL
    raise InvalidParams(f"unknown lower bound route {route!r}")


def lower_bound(params: BoundParams) -> float:
    return lower_bound_pair(params)[0]


def log_upper_ratio(params: BoundParams) -> float:
    """ln of (p/(n-1)) Γ(n/p) Γ((n+p-2)/p) / Γ((n-1)/p)^2."""
    params = _as_params(params)
    n, p = params.n, params.p
    return (
        math.log(p / (n - 1))
        + log_gamma(n / p)
        + log_gamma((n + p - 2.0) / p)
        - 2.0 * log_gamma((n - 1.0) / p)
    )


def upper_bound(params: BoundParams) -> float:
    params = _as_params(params)
    if params.is_p1:
        return 0.0
    return -math.expm1(log_upper_ratio(params))


def bound_pair(params: BoundParams) -> BoundPair:
    params = _as_params(params)
    lower, method = lower_bound_pair(params)
    return BoundPair(lower=lower, upper=upper_bound(params), method=method)


def violation_threshold(params: BoundParams) -> float:
    """1 - c0 c2 / ((n-1) c1^2) assembled from the radial moment constants."""
    params = _as_params(params)
    if params.is_p1:
        return 0.0
    n, p = params.n, params.p

    def log_moment(m: float) -> float:
        # ln ∫_0^∞ t^{m-1} e^{-t^p/p} dt
        return (m / p - 1.0) * math.log(p) + log_gamma(m / p)

    log_c0 = log_moment(n)
    log_c1 = log_moment(n - 1.0)
    log_c2 = log_moment(n + p - 2.0)
    return -math.expm1(log_c0 + log_c2 - 2.0 * log_c1 - math.log(n - 1.0))


def lower_bound_asymptotic_n(params: BoundParams) -> float:
    params = _as_params(params)
    n, p = params.n, params.p
    return (p - 1.0) / (p * n) + (p - 1.0) / (p * p * n * n)


def upper_bound_asymptotic_n(params: BoundParams) -> float:
    params = _as_params(params)
    return (params.p - 1.0) / (params.p * params.n)


def large_p_limit(n: int) -> float:
    """Both bounds tend to 1/n as p grows: the classical Brunn-Minkowski exponent."""
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidParams(f"dimension n must be an integer >= 2, got {n!r}")
    return 1.0 / int(n)


def jensen_reference(params: BoundParams) -> float:
    params = _as_params(params)
    return (params.p - 1.0) / (params.p * params.n)


def half_classical_reference(params: BoundParams) -> float:
    return 1.0 / (2.0 * _as_params(params).n)
