import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from python.bounds.bound_formulas import (
    BoundParams,
    bound_pair,
    half_classical_reference,
    jensen_reference,
    lower_bound,
    lower_bound_asymptotic_n,
    upper_bound,
    upper_bound_asymptotic_n,
)

CURVE_COLUMNS = ["x", "lower", "upper", "ref_kl", "ref_ar", "ref_trivial"]
TABLE_COLUMNS = ["n", "p", "lower", "upper", "method", "jensen_gap", "ref_kl", "ref_ar", "ref_trivial"]
ASYMPTOTIC_COLUMNS = ["n", "f1", "f2", "leading", "f1_two_term", "f1_residual_n2", "f2_residual_n2", "f1_expansion_error"]


def _compute_raw_bounds(params: BoundParams) -> Dict[str, object]:
    pair = bound_pair(params)
    return {
        "n": params.n,
        "p": params.p,
        "lower": pair.lower,
        "upper": pair.upper,
        "method": pair.method,
        "jensen_gap": pair.lower - jensen_reference(params),
        "ref_kl": half_classical_reference(params),
        "ref_ar": jensen_reference(params),
        "ref_trivial": 1.0 / params.n,
    }


def build_bound_rows(n_values: Sequence[int], p_values: Sequence[float]) -> List[Dict[str, object]]:
    rows = []
    for p in p_values:
        for n in n_values:
            rows.append(_compute_raw_bounds(BoundParams(int(n), float(p))))
    return rows


def build_curve_rows(vary: str, fixed: float, values: Sequence[float]) -> List[Dict[str, object]]:
    """One row per grid point; ``vary`` is "n" (fixed p) or "p" (fixed n)."""
    rows = []
    for x in values:
        if vary == "n":
            params = BoundParams(int(x), float(fixed))
        else:
            params = BoundParams(int(fixed), float(x))
        raw = _compute_raw_bounds(params)
        rows.append({
            "x": params.n if vary == "n" else params.p,
            "lower": raw["lower"],
            "upper": raw["upper"],
            "ref_kl": raw["ref_kl"],
            "ref_ar": raw["ref_ar"],
            "ref_trivial": raw["ref_trivial"],
        })
    return rows


def build_asymptotic_rows(p: float, n_values: Sequence[int]) -> List[Dict[str, object]]:
    rows = []
    for n in n_values:
        params = BoundParams(int(n), float(p))
        f1 = lower_bound(params)
        f2 = upper_bound(params)
        leading = upper_bound_asymptotic_n(params)
        two_term = lower_bound_asymptotic_n(params)
        rows.append({
            "n": params.n,
            "f1": f1,
            "f2": f2,
            "leading": leading,
            "f1_two_term": two_term,
            "f1_residual_n2": params.n ** 2 * (f1 - leading),
            "f2_residual_n2": params.n ** 2 * (f2 - leading),
            "f1_expansion_error": abs(f1 - two_term),
        })
    return rows


def fit_convergence_order(n_values: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log|error| against log n; None when undefined."""
    pts = [(float(n), float(e)) for n, e in zip(n_values, errors) if e > 0.0 and math.isfinite(e)]
    if len(pts) < 2:
        return None
    xs = np.log([n for n, _ in pts])
    ys = np.log([e for _, e in pts])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def residual_spread(values: Sequence[float]) -> Optional[float]:
    vals = [abs(v) for v in values if math.isfinite(v)]
    if not vals or max(vals) == 0.0:
        return None
    return (max(vals) - min(vals)) / max(vals)
