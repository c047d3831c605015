from python.bounds.bound_formulas import (
    BoundPair,
    BoundParams,
    bound_pair,
    large_p_limit,
    lower_bound,
    lower_bound_asymptotic_n,
    upper_bound,
    upper_bound_asymptotic_n,
    violation_threshold,
)

__all__ = [
    "BoundPair",
    "BoundParams",
    "bound_pair",
    "large_p_limit",
    "lower_bound",
    "lower_bound_asymptotic_n",
    "upper_bound",
    "upper_bound_asymptotic_n",
    "violation_threshold",
]
