"""Brunn-Minkowski deficits of μ_p and the empirical exponent of a body pair.

deficit = μ(λK + (1-λ)L)^α - λ μ(K)^α - (1-λ) μ(L)^α. Measure error bars are
pushed through the power map to first order and summed; a deficit only
counts as a violation when it sits more than VIOLATION_FACTOR error bars
below zero.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from python.bounds.bound_formulas import BoundParams
from python.errors import ConvergenceError, InvalidParams
from python.geometry.bodies import Body, combine, describe
from python.measure.gaussian_measure import MeasureValue, measure_of
from python.measure.quadrature import QuadratureSpec
from python.notify import notify

VIOLATION_FACTOR = 5.0
ALPHA_FLOOR = 1e-6
ALPHA_TOL = 1e-4
ROUNDING_FLOOR = 8.0 * sys.float_info.epsilon

DEFICIT_COLUMNS = [
    "lambda",
    "alpha_exponent",
    "deficit",
    "numeric_error",
    "mu_k",
    "mu_l",
    "mu_mix",
    "violated",
    "body_k",
    "body_l",
]


@dataclass(frozen=True)
class DeficitReport:
    lam: float
    alpha_exponent: float
    deficit: float
    numeric_error: float
    bodies: Tuple[str, str]
    mu_k: float = math.nan
    mu_l: float = math.nan
    mu_mix: float = math.nan

    def __post_init__(self) -> None:
        if not self.numeric_error >= 0.0:
            raise InvalidParams(f"numeric_error must be >= 0, got {self.numeric_error!r}")

    @property
    def violated(self) -> bool:
        return self.deficit < -VIOLATION_FACTOR * self.numeric_error

    def as_row(self) -> Dict[str, object]:
        return {
            "lambda": self.lam,
            "alpha_exponent": self.alpha_exponent,
            "deficit": self.deficit,
            "numeric_error": self.numeric_error,
            "mu_k": self.mu_k,
            "mu_l": self.mu_l,
            "mu_mix": self.mu_mix,
            "violated": int(self.violated),
            "body_k": self.bodies[0],
            "body_l": self.bodies[1],
        }


def _power_with_error(m: MeasureValue, alpha: float) -> Tuple[float, float]:
    """m.value^α and its propagated error; secant bound once the bar is not small."""
    mu, err = m.value, m.abs_error
    if mu <= 0.0:
        return 0.0, err ** alpha
    value = mu ** alpha
    if err < 0.1 * mu:
        return value, alpha * mu ** (alpha - 1.0) * err
    lo = max(mu - err, 0.0) ** alpha
    hi = (mu + err) ** alpha
    return value, max(hi - value, value - lo)


def _check_inputs(lam: float, alpha_exp: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise InvalidParams(f"lambda must lie in [0, 1], got {lam!r}")
    if not alpha_exp > 0.0 or math.isinf(alpha_exp):
        raise InvalidParams(f"exponent must be a positive real, got {alpha_exp!r}")


def deficit_from_measures(m_mix: MeasureValue,
                          m_k: MeasureValue,
                          m_l: MeasureValue,
                          lam: float,
                          alpha_exp: float) -> Tuple[float, float]:
    if lam in (0.0, 1.0):
        return 0.0, 0.0
    mix, e_mix = _power_with_error(m_mix, alpha_exp)
    pk, e_k = _power_with_error(m_k, alpha_exp)
    pl, e_l = _power_with_error(m_l, alpha_exp)
    deficit = mix - lam * pk - (1.0 - lam) * pl
    error = e_mix + lam * e_k + (1.0 - lam) * e_l
    error += ROUNDING_FLOOR * (abs(mix) + lam * abs(pk) + (1.0 - lam) * abs(pl))
    return deficit, error


def _measures(K: Body, L: Body, lam: float, params: BoundParams,
              spec: Optional[QuadratureSpec]) -> Tuple[MeasureValue, MeasureValue, MeasureValue]:
    m_k = measure_of(K, params, spec)
    m_l = m_k if L == K else measure_of(L, params, spec)
    if L == K or lam == 1.0:
        m_mix = m_k
    elif lam == 0.0:
        m_mix = m_l
    else:
        m_mix = measure_of(combine(lam, K, L), params, spec)
    return m_mix, m_k, m_l


def bm_deficit(K: Body,
               L: Body,
               lam: float,
               alpha_exp: float,
               params: BoundParams,
               spec: Optional[QuadratureSpec] = None) -> DeficitReport:
    lam = float(lam)
    alpha_exp = float(alpha_exp)
    _check_inputs(lam, alpha_exp)
    m_mix, m_k, m_l = _measures(K, L, lam, params, spec)
    deficit, error = deficit_from_measures(m_mix, m_k, m_l, lam, alpha_exp)
    return DeficitReport(
        lam=lam,
        alpha_exponent=alpha_exp,
        deficit=deficit,
        numeric_error=error,
        bodies=(describe(K), describe(L)),
        mu_k=m_k.value,
        mu_l=m_l.value,
        mu_mix=m_mix.value,
    )


def deficit_reports(K: Body,
                    L: Body,
                    lambda_grid: Sequence[float],
                    alpha_exp: float,
                    params: BoundParams,
                    spec: Optional[QuadratureSpec] = None) -> List[DeficitReport]:
    return [bm_deficit(K, L, lam, alpha_exp, params, spec) for lam in lambda_grid]


def empirical_max_alpha(K: Body,
                        L: Body,
                        lambda_grid: Sequence[float],
                        params: BoundParams,
                        spec: Optional[QuadratureSpec] = None) -> float:
    """Largest α in (0, 1] with every grid deficit >= -numeric_error, by bisection."""
    grid = [float(lam) for lam in lambda_grid]
    if not grid:
        raise InvalidParams("lambda grid is empty")
    for lam in grid:
        _check_inputs(lam, 1.0)
    interior = [lam for lam in grid if 0.0 < lam < 1.0]
    if not interior:
        raise InvalidParams("lambda grid needs at least one value strictly between 0 and 1")

    measures = [_measures(K, L, lam, params, spec) for lam in interior]

    def holds(alpha: float) -> bool:
        for lam, (m_mix, m_k, m_l) in zip(interior, measures):
            deficit, error = deficit_from_measures(m_mix, m_k, m_l, lam, alpha)
            if deficit < -error:
                return False
        return True

    if not holds(ALPHA_FLOOR):
        raise ConvergenceError(
            f"deficit negative already at alpha={ALPHA_FLOOR:g} for {describe(K)} and {describe(L)}; "
            "measure estimates are not trustworthy"
        )
    if holds(1.0):
        return 1.0

    lo, hi = ALPHA_FLOOR, 1.0
    while hi - lo > ALPHA_TOL:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    notify("VERIFY", f"empirical exponent for {describe(K)} / {describe(L)}: {lo:.4f}")
    return lo
