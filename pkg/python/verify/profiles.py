"""Radial profiles of F = n / (n + (p/(p-1)) V) under e^{-V}.

For a p-homogeneous potential V(rθ) = v_θ r^p the ray ratio

    g_θ(t) = ∫_0^t F(rθ) r^{n-1} e^{-V(rθ)} dr / ∫_0^t r^{n-1} e^{-V(rθ)} dr

is nonincreasing in t and tends to n times the lower bound for every θ, since
the substitution u = v_θ r^p removes v_θ. The denominator is closed form,
(1/p) v^{-n/p} Γ(n/p) P(n/p, v t^p), so only 1 - F is integrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import integrate

from python.bounds.bound_formulas import BoundParams, jensen_reference, lower_bound
from python.errors import DimensionMismatch, InvalidParams
from python.geometry.bodies import Direction, radial_many
from python.geometry.polygons import sector_polygon, vertex_angles
from python.grid.grid_scan import grid_scan, ordered_sum
from python.measure.quadrature import gauss_legendre
from python.specfun.gamma_functions import log_gamma, lower_inc_gamma_regularized

QUAD_EPSREL = 1e-12
QUAD_LIMIT = 400
WEDGE_PANEL_POINTS = 6


@dataclass(frozen=True)
class HomogeneousPotential:
    """V(x) = scale * (Σ w_i x_i²)^{p/2}; the default is |x|^p / p."""

    p: float
    scale: Optional[float] = None
    weights: Optional[tuple] = None

    def __post_init__(self) -> None:
        p = float(self.p)
        if not p > 1.0 or math.isinf(p):
            raise InvalidParams(f"potential exponent must be a finite real > 1, got {self.p!r}")
        scale = 1.0 / p if self.scale is None else float(self.scale)
        if not scale > 0.0:
            raise InvalidParams(f"potential scale must be positive, got {self.scale!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "scale", scale)
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if not w or any(not x > 0.0 for x in w):
                raise InvalidParams(f"potential weights must be positive, got {self.weights!r}")
            object.__setattr__(self, "weights", w)

    @property
    def isotropic(self) -> bool:
        return self.weights is None or len(set(self.weights)) == 1

    def coefficient(self, theta: Direction | Sequence[float]) -> float:
        """v_θ with V(rθ) = v_θ r^p."""
        u = np.asarray(theta.coords if isinstance(theta, Direction) else theta, dtype=float)
        w = np.ones_like(u) if self.weights is None else np.asarray(self.weights, dtype=float)
        if w.shape != u.shape:
            raise DimensionMismatch(f"potential has {w.size} weights, direction has {u.size} coordinates")
        return float(self.scale * float(np.dot(w, u * u)) ** (0.5 * self.p))

    def __call__(self, x: Sequence[float]) -> float:
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return 0.0
        return self.coefficient(x / r) * r ** self.p


def _check_p(params: BoundParams) -> None:
    if not params.p > 1.0:
        raise InvalidParams(f"profiles need p > 1, got p={params.p:g}")


def _ray_denominator(n: int, p: float, v: float, t: float) -> float:
    """∫_0^t r^{n-1} e^{-v r^p} dr."""
    s = n / p
    full = math.exp(-s * math.log(v) + log_gamma(s)) / p
    if math.isinf(t):
        return full
    return full * lower_inc_gamma_regularized(s, v * t ** p)


def _ray_deficit(n: int, p: float, v: float, t: float) -> float:
    """∫_0^t (1 - F) r^{n-1} e^{-v r^p} dr with (1 - F) = c v r^p / (n + c v r^p)."""
    c = p / (p - 1.0)
    scale = v ** (-1.0 / p)

    def integrand(r: float) -> float:
        u = v * r ** p
        return c * u / (n + c * u) * r ** (n - 1) * math.exp(-u)

    if math.isinf(t):
        head, _ = integrate.quad(integrand, 0.0, 4.0 * scale, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
        tail, _ = integrate.quad(integrand, 4.0 * scale, math.inf, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
        return head + tail
    value, _ = integrate.quad(integrand, 0.0, t, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return value


def ray_ratio(n: int, p: float, v: float, t: float) -> float:
    if t == 0.0:
        return 1.0
    return 1.0 - _ray_deficit(n, p, v, t) / _ray_denominator(n, p, v, t)


def g_theta_profile(potential: HomogeneousPotential,
                    theta: Direction,
                    params: BoundParams,
                    t_grid: Sequence[float]) -> List[float]:
    _check_p(params)
    if potential.p != params.p:
        raise InvalidParams(f"potential exponent {potential.p:g} does not match p={params.p:g}")
    if theta.dim != params.n:
        raise DimensionMismatch(f"direction dimension {theta.dim} does not match n={params.n}")
    ts = [float(t) for t in t_grid]
    if any(not t >= 0.0 for t in ts):
        raise InvalidParams("t grid must be nonnegative")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise InvalidParams("t grid must be strictly increasing")
    v = potential.coefficient(theta)
    return grid_scan.map_ordered(lambda t: ray_ratio(params.n, params.p, v, t), ts)


def homogeneous_g(params: BoundParams, t: float) -> float:
    """g(t) for V = t|x|^p over the whole ray, numerator by quadrature."""
    _check_p(params)
    if not t > 0.0:
        raise InvalidParams(f"t must be positive, got {t!r}")
    n, p = params.n, params.p
    c = p / (p - 1.0)
    r0 = t ** (-1.0 / p)

    def integrand(r: float) -> float:
        u = t * r ** p
        return n * math.exp(-u) / (n + c * u) * r ** (n - 1)

    head, _ = integrate.quad(integrand, 0.0, 4.0 * r0, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    tail, _ = integrate.quad(integrand, 4.0 * r0, math.inf, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    denominator = math.exp(-(n / p) * math.log(t) + log_gamma(n / p)) / p
    return (head + tail) / denominator


def homogeneous_g_values(params: BoundParams, t_values: Sequence[float]) -> List[float]:
    return [homogeneous_g(params, float(t)) for t in t_values]


def homogeneous_g_constancy(params: BoundParams, t_values: Sequence[float]) -> float:
    """Max over pairs of |g(t_i)/g(t_j) - 1|."""
    _check_p(params)
    ts = [float(t) for t in t_values]
    if len(ts) < 2 or any(not t > 0.0 for t in ts):
        raise InvalidParams("need at least two positive t values")
    if max(ts) / min(ts) < 100.0:
        raise InvalidParams("t values must span at least two decades")
    g = homogeneous_g_values(params, ts)
    return max(abs(a / b - 1.0) for a in g for b in g)


def jensen_gap(params: BoundParams) -> float:
    """lower_bound - (p-1)/(pn); Jensen makes it strictly positive."""
    _check_p(params)
    return lower_bound(params) - jensen_reference(params)


@dataclass(frozen=True)
class WedgeAverage:
    phi: float
    delta: float
    R: float
    body_average: float
    ray_value: float

    @property
    def gap(self) -> float:
        return abs(self.body_average - self.ray_value)


def wedge_average(params: BoundParams,
                  potential: HomogeneousPotential,
                  phi: float,
                  delta: float,
                  R: float) -> WedgeAverage:
    """Average of F over the sector of half-angle δ around φ, against e^{-V}, next to g_φ(R).

    Angular panels run between consecutive arc vertices, each with a small
    Gauss-Legendre rule; along every direction both radial integrals reuse the
    ray formulas above.
    """
    _check_p(params)
    if params.n != 2:
        raise DimensionMismatch(f"wedge averages are planar, got n={params.n}")
    if potential.p != params.p:
        raise InvalidParams(f"potential exponent {potential.p:g} does not match p={params.p:g}")
    wedge = sector_polygon(phi, delta, R)
    n, p = params.n, params.p

    lo_edge = phi - delta
    # offsets from the lower edge, in [0, 2δ]
    angles = sorted(
        min(max(math.remainder(a - lo_edge, 2.0 * math.pi), 0.0), 2.0 * delta)
        for a in vertex_angles(wedge)
    )
    nodes, weights = gauss_legendre(WEDGE_PANEL_POINTS)

    def panel(bounds: tuple) -> tuple:
        a, b = bounds
        half, mid = 0.5 * (b - a), 0.5 * (a + b)
        thetas = lo_edge + mid + half * np.asarray(nodes)
        dirs = np.column_stack([np.cos(thetas), np.sin(thetas)])
        rho = radial_many(wedge, dirs)
        num = den = 0.0
        for w, u, r in zip(weights, dirs, rho):
            v = potential.coefficient(u)
            d = _ray_denominator(n, p, v, float(r))
            num += w * (d - _ray_deficit(n, p, v, float(r)))
            den += w * d
        return half * num, half * den

    spans = [(a, b) for a, b in zip(angles, angles[1:]) if b - a > 1e-15]
    parts = grid_scan.map_ordered(panel, spans)
    body_average = ordered_sum([x for x, _ in parts]) / ordered_sum([y for _, y in parts])
    ray = ray_ratio(n, p, potential.coefficient((math.cos(phi), math.sin(phi))), R)
    return WedgeAverage(phi=phi, delta=delta, R=R, body_average=body_average, ray_value=ray)
