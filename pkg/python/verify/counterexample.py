"""Search for cone pairs whose q-deficit is certifiably negative.

A is the cone {x_n >= |x'| tan α} and B the same cone dropped by ε, both cut to
the ball of radius R. The combination λA + (1-λ)B is measured as the cone
dropped by (1-λ)ε cut to the same ball; that set contains the true
combination, so a negative deficit found this way stays negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from python.bounds.bound_formulas import BoundParams, upper_bound
from python.errors import InvalidParams
from python.geometry.bodies import TruncatedCone
from python.grid.grid_scan import grid_scan
from python.measure.cone_kernel import expansion_coefficients, predicted_deficit
from python.measure.quadrature import QuadratureSpec
from python.notify import notify
from python.verify.deficit import VIOLATION_FACTOR, DeficitReport, bm_deficit

DEFAULT_ALPHA_GRID = (1.40, 1.45, 1.50, 1.52, 1.55)
DEFAULT_EPS_GRID = (0.05, 0.1, 0.2)
DEFAULT_R = 30.0
DEFAULT_LAMBDA = 0.5

WITNESS_COLUMNS = [
    "alpha",
    "eps",
    "R",
    "lambda",
    "q",
    "deficit",
    "error",
    "predicted",
    "mu_a",
    "mu_b",
    "mu_mix",
]


@dataclass(frozen=True)
class CounterexampleWitness:
    alpha: float
    eps: float
    R: float
    lam: float
    q: float
    deficit: float
    error: float
    predicted: float = math.nan
    mu_a: float = math.nan
    mu_b: float = math.nan
    mu_mix: float = math.nan

    def __post_init__(self) -> None:
        if not self.q > 0.0:
            raise InvalidParams(f"exponent q must be positive, got {self.q!r}")
        if not self.deficit < -VIOLATION_FACTOR * self.error:
            raise InvalidParams(
                f"deficit {self.deficit:.3e} is not below -{VIOLATION_FACTOR:g} x error {self.error:.3e}"
            )

    def as_row(self) -> Dict[str, object]:
        return {
            "alpha": self.alpha,
            "eps": self.eps,
            "R": self.R,
            "lambda": self.lam,
            "q": self.q,
            "deficit": self.deficit,
            "error": self.error,
            "predicted": self.predicted,
            "mu_a": self.mu_a,
            "mu_b": self.mu_b,
            "mu_mix": self.mu_mix,
        }


def cone_pair(params: BoundParams, alpha: float, eps: float, R: float = DEFAULT_R) -> Tuple[TruncatedCone, TruncatedCone]:
    return (
        TruncatedCone(alpha, 0.0, R, params.n),
        TruncatedCone(alpha, eps, R, params.n),
    )


def cone_deficit(params: BoundParams,
                 q: float,
                 alpha: float,
                 eps: float,
                 R: float = DEFAULT_R,
                 lam: float = DEFAULT_LAMBDA,
                 spec: Optional[QuadratureSpec] = None) -> DeficitReport:
    A, B = cone_pair(params, alpha, eps, R)
    return bm_deficit(A, B, lam, q, params, spec)


def counterexample_search(params: BoundParams,
                          q: float,
                          alpha_grid: Optional[Sequence[float]] = None,
                          eps_grid: Optional[Sequence[float]] = None,
                          R: float = DEFAULT_R,
                          lam: float = DEFAULT_LAMBDA,
                          spec: Optional[QuadratureSpec] = None) -> Optional[CounterexampleWitness]:
    """First (α, ε) grid point, α-major, whose deficit is below -5 error bars.

    The hit is recomputed with a tightened quadrature and only returned if it
    still certifies. Returns None when no grid point does.
    """
    q = float(q)
    if not q > 0.0:
        raise InvalidParams(f"exponent q must be positive, got {q!r}")
    if not 0.0 < lam < 1.0:
        raise InvalidParams(f"lambda must lie strictly between 0 and 1, got {lam!r}")
    alphas = [float(a) for a in (DEFAULT_ALPHA_GRID if alpha_grid is None else alpha_grid)]
    epss = [float(e) for e in (DEFAULT_EPS_GRID if eps_grid is None else eps_grid)]
    if not alphas or not epss:
        raise InvalidParams("counterexample grids must be nonempty")
    for e in epss:
        if not e > 0.0:
            raise InvalidParams(f"cone drop must be positive, got {e!r}")

    threshold = upper_bound(params)
    if q <= threshold:
        notify("WARN", f"q={q:g} <= upper bound {threshold:.6f}; no violation is expected")

    spec = spec or QuadratureSpec.default_for(params.n)
    tuples = [(a, e) for a in alphas for e in epss]

    def evaluate(item: Tuple[float, float]) -> DeficitReport:
        a, e = item
        return cone_deficit(params, q, a, e, R, lam, spec)

    start = 0
    while start < len(tuples):
        remaining = tuples[start:]
        reports = grid_scan.scan(remaining, evaluate, stop=lambda r: r.violated, label="counterexample")
        hit = next((i for i, r in enumerate(reports) if r.violated), None)
        if hit is None:
            break
        a, e = remaining[hit]
        confirmed = cone_deficit(params, q, a, e, R, lam, spec.tightened())
        if confirmed.violated:
            return _witness(params, q, a, e, R, lam, spec, confirmed)
        notify("WARN", f"grid hit at alpha={a:g}, eps={e:g} did not survive the tightened quadrature")
        start += hit + 1

    notify("SEARCH", f"no witness at q={q:g} on {len(tuples)} grid points")
    return None


def _witness(params: BoundParams, q: float, a: float, e: float, R: float, lam: float,
             spec: QuadratureSpec, confirmed: DeficitReport) -> CounterexampleWitness:
    coeffs = expansion_coefficients(params, a, tol=spec.radial_tol)
    witness = CounterexampleWitness(
        alpha=a,
        eps=e,
        R=R,
        lam=lam,
        q=q,
        deficit=confirmed.deficit,
        error=confirmed.numeric_error,
        predicted=predicted_deficit(coeffs, params, q, lam, e),
        mu_a=confirmed.mu_k,
        mu_b=confirmed.mu_l,
        mu_mix=confirmed.mu_mix,
    )
    notify("SEARCH", f"witness at alpha={a:g}, eps={e:g}: deficit={witness.deficit:.3e} +/- {witness.error:.1e}")
    return witness
