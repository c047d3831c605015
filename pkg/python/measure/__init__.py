from python.measure.cone_kernel import (
    ExpansionCoefficients,
    coarea_I0,
    cone_measure,
    expansion_coefficients,
    expansion_residual,
    kernel_H,
    predicted_deficit,
    second_order_coefficient,
)
from python.measure.gaussian_measure import MeasureValue, measure_of, mu, radial_mass
from python.measure.quadrature import QuadratureSpec

__all__ = [
    "ExpansionCoefficients",
    "MeasureValue",
    "QuadratureSpec",
    "coarea_I0",
    "cone_measure",
    "expansion_coefficients",
    "expansion_residual",
    "kernel_H",
    "measure_of",
    "mu",
    "predicted_deficit",
    "radial_mass",
    "second_order_coefficient",
]
