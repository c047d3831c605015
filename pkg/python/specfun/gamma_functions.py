"""Gamma-family special functions over the argument ranges the bound formulas need.

Two classical expansions back ``log_gamma``: the Stirling series with
Bernoulli coefficients for large arguments, and the logarithm of the
Weierstrass (Euler) product for ``ln Γ(1 + z)`` near the origin. The upper
incomplete gamma ``Γ(s, x)`` accepts any real ``s``; ``s <= 0`` is routed
through the continued fraction or a small-x series followed by a scaled
downward recurrence, never through the ``s > 0`` power series alone.
"""

from __future__ import annotations

import math

from scipy.special import zetac

from python.errors import ConvergenceError, DomainError, GammaOverflow

EULER_GAMMA = 0.57721566490153286060651209008240243
HALF_LOG_2PI = 0.91893853320467274178032973640561764
LOG_MAX = 709.782712893384

CF_EPS = 1e-15
MAX_ITER = 1_000_000
TINY = 1e-300

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2m / (2m (2m - 1)) for m = 1..8.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

# zeta(k) - 1 for k = 2..41
_ZETAC = tuple(float(zetac(k)) for k in range(2, 42))


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value):
        raise DomainError(f"{name} must not be NaN")
    return value


def log_gamma_1p(z: float) -> float:
    """ln Γ(1 + z) for |z| < 1 from the Weierstrass product.

    ln Γ(1+z) = -γz + Σ_{k≥2} (-1)^k ζ(k) z^k / k, rearranged as
    (1 - γ)z - log1p(z) + Σ_{k≥2} (-1)^k (ζ(k) - 1) z^k / k so the tail
    decays like (z/2)^k.
    """
    z = _check_finite("z", z)
    if not -1.0 < z < 1.0:
        raise DomainError(f"log_gamma_1p needs |z| < 1, got {z}")
    if z == 0.0:
        return 0.0
    total = 0.0
    power = -z
    for k, zc in enumerate(_ZETAC, start=2):
        power *= -z
        term = zc * power / k
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return (1.0 - EULER_GAMMA) * z - math.log1p(z) + total


def _log_gamma_lanczos(x: float) -> float:
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def _log_gamma_stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    power = inv
    for coeff in _STIRLING:
        corr += coeff * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + HALF_LOG_2PI + corr


def log_gamma(x: float) -> float:
    x = _check_finite("x", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    if math.isinf(x):
        return math.inf
    if x < 0.5:
        return log_gamma_1p(x) - math.log(x)
    if x < 1.5:
        return log_gamma_1p(x - 1.0)
    if x < 2.5:
        return math.log1p(x - 2.0) + log_gamma_1p(x - 2.0)
    if x < 20.0:
        return _log_gamma_lanczos(x)
    return _log_gamma_stirling(x)


def _lower_series(s: float, x: float) -> float:
    """Σ_k x^k / (s (s+1) ... (s+k)); γ(s,x) = x^s e^{-x} times this."""
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * CF_EPS:
            return total
    raise ConvergenceError(f"lower gamma series did not converge for s={s}, x={x}")


def _upper_continued_fraction(s: float, x: float) -> float:
    """Modified Lentz evaluation of h with Γ(s,x) = e^{-x} x^s h."""
    b = x + 1.0 - s
    c = 1.0 / TINY
    d = 1.0 / b if b != 0.0 else 1.0 / TINY
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ConvergenceError(f"incomplete gamma continued fraction did not converge for s={s}, x={x}")


def _upper_small_x(s0: float, x: float) -> float:
    """Γ(s0, x) for s0 in (-1/2, 1/2] and small x, free of the 1/s0 pole.

    Γ(s0) - x^s0/s0 = (Γ(1+s0) - 1)/s0 - (x^s0 - 1)/s0, then the convergent
    tail x^s0 Σ_{k≥1} (-x)^k / (k! (s0 + k)).
    """
    lx = math.log(x)
    if s0 == 0.0:
        head = -EULER_GAMMA - lx
    else:
        head = math.expm1(log_gamma_1p(s0)) / s0 - math.expm1(s0 * lx) / s0
    term = 1.0
    tail = 0.0
    for k in range(1, MAX_ITER + 1):
        term *= -x / k
        contrib = term / (s0 + k)
        tail += contrib
        if abs(contrib) < CF_EPS * abs(tail):
            return head - math.exp(s0 * lx) * tail
    raise ConvergenceError(f"small-x incomplete gamma series did not converge for s={s0}, x={x}")


def _log_upper_by_recurrence(s: float, x: float) -> float:
    steps = int(math.floor(0.5 - s))
    s0 = s + steps
    start = _upper_small_x(s0, x)
    if start <= 0.0:
        raise ConvergenceError(f"small-x incomplete gamma lost positivity at s={s0}, x={x}")
    lx = math.log(x)
    # G(s) = Γ(s,x) x^{-s} e^{x}; G(s-1) = (1 - x G(s)) / (1 - s)
    scaled = math.exp(math.log(start) - s0 * lx + x)
    current = s0
    for _ in range(steps):
        current -= 1.0
        scaled = (1.0 - x * scaled) / (-current)
        if scaled <= 0.0:
            raise ConvergenceError(f"downward recurrence lost positivity at s={current}, x={x}")
    return math.log(scaled) + s * lx - x


def log_upper_inc_gamma(s: float, x: float) -> float:
    """ln Γ(s, x) for any finite real s and x > 0."""
    s = _check_finite("s", s)
    x = _check_finite("x", x)
    if math.isinf(s):
        raise DomainError("s must be finite")
    if x <= 0.0:
        raise DomainError(f"upper incomplete gamma needs x > 0, got {x}")
    if math.isinf(x):
        return -math.inf

    if s > 0.0:
        if x >= s + 1.0:
            return s * math.log(x) - x + math.log(_upper_continued_fraction(s, x))
        if s <= 0.5:
            return math.log(_upper_small_x(s, x))
        lower = math.exp(s * math.log(x) - x - log_gamma(s)) * _lower_series(s, x)
        if lower >= 1.0:
            raise ConvergenceError(f"regularized lower gamma reached 1 at s={s}, x={x}")
        return log_gamma(s) + math.log1p(-lower)

    if x >= 0.3:
        return s * math.log(x) - x + math.log(_upper_continued_fraction(s, x))
    return _log_upper_by_recurrence(s, x)


def upper_inc_gamma(s: float, x: float) -> float:
    value = log_upper_inc_gamma(s, x)
    if value > LOG_MAX:
        raise GammaOverflow(f"Γ({s}, {x}) overflows; use log_scaled_upper_gamma")
    return math.exp(value)


def log_scaled_upper_gamma(s: float, x: float) -> float:
    """ln Γ(s, x) + x."""
    return log_upper_inc_gamma(s, x) + float(x)


def lower_inc_gamma_regularized(s: float, x: float) -> float:
    """P(s, x) = γ(s, x) / Γ(s)."""
    s = _check_finite("s", s)
    x = _check_finite("x", x)
    if s <= 0.0:
        raise DomainError(f"regularized lower gamma needs s > 0, got {s}")
    if x < 0.0:
        raise DomainError(f"regularized lower gamma needs x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < s + 1.0:
        log_pref = s * math.log(x) - x - log_gamma(s)
        return min(1.0, math.exp(log_pref) * _lower_series(s, x))
    log_pref = s * math.log(x) - x - log_gamma(s)
    upper = math.exp(log_pref) * _upper_continued_fraction(s, x)
    return max(0.0, 1.0 - upper)


def upper_inc_gamma_regularized(s: float, x: float) -> float:
    """Q(s, x) = Γ(s, x) / Γ(s)."""
    s = _check_finite("s", s)
    x = _check_finite("x", x)
    if s <= 0.0:
        raise DomainError(f"regularized upper gamma needs s > 0, got {s}")
    if x < 0.0:
        raise DomainError(f"regularized upper gamma needs x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    log_pref = s * math.log(x) - x - log_gamma(s)
    if x < s + 1.0:
        return max(0.0, 1.0 - math.exp(log_pref) * _lower_series(s, x))
    return min(1.0, math.exp(log_pref) * _upper_continued_fraction(s, x))
