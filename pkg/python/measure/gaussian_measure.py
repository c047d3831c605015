"""μ_p of convex bodies containing the origin.

dμ_p = c(n,p) e^{-|x|^p/p} dx with c(n,p) = Γ(n/2) / (2 π^{n/2} p^{n/p-1} Γ(n/p)).
In polar coordinates the radial integral is closed form,

    ∫_0^ρ r^{n-1} e^{-r^p/p} dr = p^{n/p-1} γ(n/p, ρ^p/p),

so μ_p(K) is the sphere average of the regularized lower gamma P(n/p, ρ_K(θ)^p/p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

import numpy as np
from scipy.special import gammainc

from python.bounds.bound_formulas import BoundParams
from python.errors import DimensionMismatch, InvalidParams, UnsupportedCombination
from python.geometry.bodies import (
    Ball,
    Body,
    Combination,
    HPolytope,
    Polygon2D,
    TruncatedCone,
    body_dim,
    radial_many,
)
from python.geometry.polygons import polygon_minkowski
from python.grid.grid_scan import grid_scan, ordered_sum
from python.measure.quadrature import (
    EXACT_ANGLE_2D,
    MONTE_CARLO,
    PRODUCT_GAUSS_3D,
    QuadratureSpec,
    gauss_panel_with_error,
    product_rule_3d,
    sphere_directions,
)
from python.specfun.gamma_functions import log_gamma, lower_inc_gamma_regularized

DETERMINISTIC = "deterministic-quadrature"
MONTE_CARLO_CI = "monte-carlo-95ci"

TWO_PI = 2.0 * math.pi
UNIFORM_PANELS = 8


@dataclass(frozen=True)
class MeasureValue:
    value: float
    abs_error: float
    kind: str = DETERMINISTIC

    def __post_init__(self) -> None:
        if not self.abs_error >= 0.0:
            raise InvalidParams(f"abs_error must be >= 0, got {self.abs_error!r}")


def log_normalization(n: int, p: float) -> float:
    """ln c(n, p)."""
    return (
        log_gamma(n / 2.0)
        - math.log(2.0)
        - 0.5 * n * math.log(math.pi)
        - (n / p - 1.0) * math.log(p)
        - log_gamma(n / p)
    )


def log_sphere_area(m: int) -> float:
    """ln |S^{m-1}| = ln(2 π^{m/2} / Γ(m/2))."""
    return math.log(2.0) + 0.5 * m * math.log(math.pi) - log_gamma(m / 2.0)


def radial_mass(n: int, p: float, R: float) -> float:
    """∫_0^R r^{n-1} e^{-r^p/p} dr."""
    if int(n) != n or n < 1:
        raise InvalidParams(f"n must be a positive integer, got {n!r}")
    if not p >= 1.0:
        raise InvalidParams(f"p must be >= 1, got {p!r}")
    if not R >= 0.0:
        raise InvalidParams(f"R must be >= 0, got {R!r}")
    s = n / p
    full = math.exp((s - 1.0) * math.log(p) + log_gamma(s))
    if R == 0.0:
        return 0.0
    if math.isinf(R):
        return full
    log_x = p * math.log(R) - math.log(p)
    x = math.exp(log_x) if log_x < 700.0 else math.inf
    return full * lower_inc_gamma_regularized(s, x)


def radial_mass_fraction(n: int, p: float, rho: np.ndarray) -> np.ndarray:
    """P(n/p, ρ^p/p) for an array of radii, +inf allowed."""
    rho = np.asarray(rho, dtype=float)
    with np.errstate(over="ignore"):
        x = np.where(np.isinf(rho), np.inf, np.power(rho, p) / p)
    return gammainc(n / p, x)


def _angles(dirs_angle: np.ndarray) -> np.ndarray:
    return np.column_stack([np.cos(dirs_angle), np.sin(dirs_angle)])


def _cone_breaks_2d(cone: TruncatedCone) -> List[float]:
    a = cone.alpha
    breaks = [a, math.pi - a, 1.5 * math.pi]
    if cone.truncated and cone.eps > 0.0:
        ratio = cone.eps * math.cos(a) / cone.R
        if ratio < 1.0:
            for phi in (a - math.asin(ratio), a - math.pi + math.asin(ratio)):
                breaks.extend([phi, math.pi - phi])
    return breaks


def angular_breaks(body: Body) -> List[float]:
    """Angles in [0, 2π) where the planar radial function may lose smoothness."""
    if isinstance(body, Ball):
        raw: List[float] = []
    elif isinstance(body, Polygon2D):
        raw = [math.atan2(y, x) for x, y in body.vertices if (x, y) != (0.0, 0.0)]
        for (nx, ny), h in zip(body.edge_normals, body.edge_offsets):
            if h == 0.0:
                raw.extend([math.atan2(ny, nx) + 0.5 * math.pi, math.atan2(ny, nx) - 0.5 * math.pi])
    elif isinstance(body, HPolytope):
        try:
            return angular_breaks(body.as_polygon())
        except UnsupportedCombination:
            a, b = body.matrix()
            raw = []
            for nx, ny in a:
                raw.extend([math.atan2(ny, nx) + 0.5 * math.pi, math.atan2(ny, nx) - 0.5 * math.pi])
            for i in range(len(b)):
                for j in range(i + 1, len(b)):
                    m = np.array([a[i], a[j]])
                    if abs(np.linalg.det(m)) > 1e-14:
                        x = np.linalg.solve(m, np.array([b[i], b[j]]))
                        if np.hypot(*x) > 0.0:
                            raw.append(math.atan2(x[1], x[0]))
    elif isinstance(body, TruncatedCone):
        raw = _cone_breaks_2d(body)
    else:
        raw = angular_breaks(body.left) + angular_breaks(body.right)
    return sorted({round(t % TWO_PI, 15) for t in raw})


def _panels(body: Body) -> List[tuple]:
    cuts = set(angular_breaks(body))
    cuts.update(TWO_PI * k / UNIFORM_PANELS for k in range(UNIFORM_PANELS))
    ordered = sorted(c for c in cuts if 0.0 <= c < TWO_PI)
    ordered.append(ordered[0] + TWO_PI)
    return [(lo, hi) for lo, hi in zip(ordered[:-1], ordered[1:]) if hi - lo > 1e-15]


def _mu_planar(body: Body, params: BoundParams, spec: QuadratureSpec) -> MeasureValue:
    n, p = params.n, params.p
    m = max(8, spec.sphere_points // 2)

    def integrand(phi: np.ndarray) -> np.ndarray:
        return radial_mass_fraction(n, p, radial_many(body, _angles(phi)))

    parts = grid_scan.map_ordered(lambda panel: gauss_panel_with_error(integrand, panel[0], panel[1], m), _panels(body))
    value = ordered_sum([v for v, _ in parts]) / TWO_PI
    err = ordered_sum([e for _, e in parts]) / TWO_PI
    return MeasureValue(min(max(value, 0.0), 1.0), err, DETERMINISTIC)


def _mu_product_3d(body: Body, params: BoundParams, spec: QuadratureSpec) -> MeasureValue:
    n, p = params.n, params.p

    def rule_value(points: int) -> float:
        dirs, weights = product_rule_3d(points)
        chunks = np.array_split(np.arange(len(weights)), max(1, grid_scan.workers))
        partial = grid_scan.map_ordered(
            lambda idx: float(np.dot(weights[idx], radial_mass_fraction(n, p, radial_many(body, dirs[idx])))),
            [c for c in chunks if len(c)],
        )
        return ordered_sum(partial)

    fine = rule_value(spec.sphere_points)
    coarse = rule_value(max(4, spec.sphere_points // 2))
    err = abs(fine - coarse) + 4.0 * np.finfo(float).eps
    return MeasureValue(min(max(fine, 0.0), 1.0), err, DETERMINISTIC)


def _mu_monte_carlo(body: Body, params: BoundParams, spec: QuadratureSpec) -> MeasureValue:
    dirs = sphere_directions(params.n, spec.samples, spec.seed)
    values = radial_mass_fraction(params.n, params.p, radial_many(body, dirs))
    mean = float(np.mean(values))
    half_width = 1.96 * float(np.std(values, ddof=1)) / math.sqrt(len(values))
    return MeasureValue(mean, half_width, MONTE_CARLO_CI)


def mu(body: Body, params: BoundParams, spec: Optional[QuadratureSpec] = None) -> MeasureValue:
    n = params.n
    if body_dim(body) != n:
        raise DimensionMismatch(f"body dimension {body_dim(body)} does not match n={n}")
    spec = spec or QuadratureSpec.default_for(n)
    if spec.sphere_rule == EXACT_ANGLE_2D:
        if n != 2:
            raise DimensionMismatch(f"sphere rule {EXACT_ANGLE_2D} needs n=2, got n={n}")
        return _mu_planar(body, params, spec)
    if spec.sphere_rule == PRODUCT_GAUSS_3D:
        if n != 3:
            raise DimensionMismatch(f"sphere rule {PRODUCT_GAUSS_3D} needs n=3, got n={n}")
        return _mu_product_3d(body, params, spec)
    if spec.sphere_rule == MONTE_CARLO:
        return _mu_monte_carlo(body, params, spec)
    raise DimensionMismatch(f"unsupported sphere rule {spec.sphere_rule!r} for n={n}")


def ball_measure(ball: Ball, params: BoundParams) -> MeasureValue:
    value = float(radial_mass_fraction(params.n, params.p, np.array([ball.radius]))[0])
    return MeasureValue(value, 8.0 * np.finfo(float).eps, DETERMINISTIC)


@lru_cache(maxsize=4096)
def _measure_cached(body: Body, params: BoundParams, spec: QuadratureSpec) -> MeasureValue:
    from python.measure.cone_kernel import cone_measure

    if isinstance(body, Ball):
        return ball_measure(body, params)
    if isinstance(body, TruncatedCone):
        return cone_measure(body, params, tol=spec.radial_tol)
    if isinstance(body, Combination):
        left, right = body.left, body.right
        if isinstance(left, HPolytope) and left.dim == 2:
            left = left.as_polygon()
        if isinstance(right, HPolytope) and right.dim == 2:
            right = right.as_polygon()
        if isinstance(left, Polygon2D) and isinstance(right, Polygon2D):
            return mu(polygon_minkowski(body.lam, left, right), params, spec)
    return mu(body, params, spec)


def measure_of(body: Body, params: BoundParams, spec: Optional[QuadratureSpec] = None) -> MeasureValue:
    """μ_p(body) by the most exact route available for its kind."""
    if body_dim(body) != params.n:
        raise DimensionMismatch(f"body dimension {body_dim(body)} does not match n={params.n}")
    return _measure_cached(body, params, spec or QuadratureSpec.default_for(params.n))
