from python.specfun.gamma_functions import (
    log_gamma,
    log_gamma_1p,
    log_scaled_upper_gamma,
    log_upper_inc_gamma,
    lower_inc_gamma_regularized,
    upper_inc_gamma,
    upper_inc_gamma_regularized,
)

__all__ = [
    "log_gamma",
    "log_gamma_1p",
    "log_scaled_upper_gamma",
    "log_upper_inc_gamma",
    "lower_inc_gamma_regularized",
    "upper_inc_gamma",
    "upper_inc_gamma_regularized",
]
