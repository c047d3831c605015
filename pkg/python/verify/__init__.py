from python.verify.counterexample import CounterexampleWitness, counterexample_search
from python.verify.deficit import DeficitReport, bm_deficit, empirical_max_alpha
from python.verify.profiles import (
    HomogeneousPotential,
    g_theta_profile,
    homogeneous_g_constancy,
    jensen_gap,
    wedge_average,
)

__all__ = [
    "CounterexampleWitness",
    "DeficitReport",
    "HomogeneousPotential",
    "bm_deficit",
    "counterexample_search",
    "empirical_max_alpha",
    "g_theta_profile",
    "homogeneous_g_constancy",
    "jensen_gap",
    "wedge_average",
]
