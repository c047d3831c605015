from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from python import settings
from python.errors import InvalidParams

EXACT_ANGLE_2D = "exact-angle-2d"
PRODUCT_GAUSS_3D = "product-gauss-3d"
MONTE_CARLO = "monte-carlo"
SPHERE_RULES = (EXACT_ANGLE_2D, PRODUCT_GAUSS_3D, MONTE_CARLO)

MIN_MC_SAMPLES = 1000


@dataclass(frozen=True)
class QuadratureSpec:
    sphere_rule: str = EXACT_ANGLE_2D
    radial_tol: float = settings.RADIAL_TOL
    sphere_points: int = settings.SPHERE_POINTS
    samples: int = settings.SAMPLES
    seed: int = settings.SEED

    def __post_init__(self) -> None:
        if self.sphere_rule not in SPHERE_RULES:
            raise InvalidParams(f"unknown sphere rule {self.sphere_rule!r}")
        if not float(self.radial_tol) > 0.0:
            raise InvalidParams(f"radial_tol must be positive, got {self.radial_tol!r}")
        if int(self.sphere_points) < 4:
            raise InvalidParams(f"sphere_points must be >= 4, got {self.sphere_points!r}")
        if self.sphere_rule == MONTE_CARLO and int(self.samples) < MIN_MC_SAMPLES:
            raise InvalidParams(f"monte-carlo needs at least {MIN_MC_SAMPLES} samples, got {self.samples!r}")

    @classmethod
    def default_for(cls, n: int, **overrides) -> "QuadratureSpec":
        rule = EXACT_ANGLE_2D if n == 2 else PRODUCT_GAUSS_3D if n == 3 else MONTE_CARLO
        return cls(sphere_rule=overrides.pop("sphere_rule", rule), **overrides)

    def tightened(self, factor: float = 100.0) -> "QuadratureSpec":
        return replace(self, radial_tol=self.radial_tol / factor, sphere_points=self.sphere_points * 2)


@lru_cache(maxsize=64)
def gauss_legendre(m: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(int(m))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_panel(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, m: int) -> float:
    nodes, weights = gauss_legendre(m)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * float(np.dot(weights, f(mid + half * nodes)))


def gauss_panel_with_error(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, m: int) -> Tuple[float, float]:
    """m-point and 2m-point Gauss-Legendre; the difference bounds the coarse error."""
    coarse = gauss_panel(f, lo, hi, m)
    fine = gauss_panel(f, lo, hi, 2 * m)
    return fine, abs(fine - coarse) + 4.0 * np.finfo(float).eps * abs(fine)


def sphere_directions(n: int, samples: int, seed: int) -> np.ndarray:
    """Isotropic unit vectors from normalized Gaussian draws."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((int(samples), int(n)))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0.0] = 1.0
    return g / norms[:, None]


def product_rule_3d(points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre in cos(theta) times the trapezoid in azimuth; weights sum to 1."""
    m_phi = int(points)
    m_z = max(2, m_phi // 2)
    z, wz = gauss_legendre(m_z)
    phi = 2.0 * math.pi * (np.arange(m_phi) + 0.5) / m_phi
    zz, pp = np.meshgrid(z, phi, indexing="ij")
    rr = np.sqrt(np.clip(1.0 - zz * zz, 0.0, None))
    dirs = np.column_stack([(rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel(), zz.ravel()])
    weights = (np.repeat(wz, m_phi) / (2.0 * m_phi))
    return dirs, weights
