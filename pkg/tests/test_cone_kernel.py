import math

import pytest

from python.bounds.bound_formulas import BoundParams, upper_bound
from python.errors import DimensionMismatch, InvalidParams
from python.geometry.bodies import TruncatedCone
from python.measure.cone_kernel import (
    coarea_I0,
    cone_measure,
    expansion_coefficients,
    expansion_residual,
    kernel_H,
    predicted_deficit,
    radial_moment,
    second_order_coefficient,
)
from python.measure.gaussian_measure import mu
from python.measure.quadrature import MONTE_CARLO, QuadratureSpec

PLANE = BoundParams(2, 2.0)
SPACE = BoundParams(3, 2.0)


class TestKernel:
    def test_half_gaussian(self):
        assert kernel_H(0.0, 0.0, 2.0) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-12)

    def test_negative_lower_limit(self):
        assert kernel_H(0.0, -40.0, 2.0) == pytest.approx(math.sqrt(2.0 * math.pi), rel=1e-12)

    def test_decreasing_in_s(self):
        values = [kernel_H(0.6, s, 3.0) for s in (-2.0, -0.5, 0.0, 0.7, 2.0, 5.0)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert 0.0 <= kernel_H(0.6, 40.0, 3.0) < 1e-12

    @pytest.mark.parametrize("p", [2.0, 3.0])
    @pytest.mark.parametrize("r,alpha", [(0.8, 0.6), (0.3, 1.2)])
    def test_slope_on_cone_boundary(self, p, r, alpha):
        """∂H/∂s at s = r tan α equals -exp(-r^p / (p cos^p α))."""
        s = r * math.tan(alpha)
        h = 1e-4
        slope = (kernel_H(r, s + h, p) - kernel_H(r, s - h, p)) / (2.0 * h)
        expected = -math.exp(-(r ** p) / (p * math.cos(alpha) ** p))
        assert slope == pytest.approx(expected, rel=1e-6)

    def test_invalid(self):
        with pytest.raises(InvalidParams):
            kernel_H(-1.0, 0.0, 2.0)
        with pytest.raises(InvalidParams):
            kernel_H(0.0, 0.0, 0.5)


class TestConeMeasure:
    def test_quarter_plane(self):
        cone = TruncatedCone(math.pi / 4.0, 0.0, math.inf, 2)
        assert cone_measure(cone, PLANE).value == pytest.approx(0.25, abs=1e-9)

    @pytest.mark.parametrize("alpha", [0.5, 1.1])
    def test_solid_angle_in_space(self, alpha):
        cone = TruncatedCone(alpha, 0.0, math.inf, 3)
        assert cone_measure(cone, SPACE).value == pytest.approx(0.5 * (1.0 - math.sin(alpha)), abs=1e-9)

    def test_truncated_sector(self):
        cone = TruncatedCone(math.pi / 4.0, 0.0, 1.0, 2)
        expected = 0.25 * (1.0 - math.exp(-0.5))
        assert cone_measure(cone, PLANE).value == pytest.approx(expected, abs=1e-9)
        assert mu(cone, PLANE).value == pytest.approx(expected, abs=1e-9)

    def test_dropped_cone_matches_planar_quadrature(self):
        cone = TruncatedCone(1.2, 0.3, 6.0, 2)
        a = cone_measure(cone, PLANE)
        b = mu(cone, PLANE)
        assert abs(a.value - b.value) <= 1e-8

    def test_agrees_with_monte_carlo(self):
        cone = TruncatedCone(0.5, 0.0, math.inf, 3)
        exact = cone_measure(cone, SPACE)
        sampled = mu(cone, SPACE, QuadratureSpec(sphere_rule=MONTE_CARLO, samples=200_000, seed=3))
        assert abs(exact.value - sampled.value) <= 2.0 * sampled.abs_error + exact.abs_error

    def test_vanishes_as_angle_closes(self):
        values = [cone_measure(TruncatedCone(a, 0.0, math.inf, 2), PLANE).value for a in (1.3, 1.5, 1.56, 1.57)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-3

    def test_dimension_checked(self):
        with pytest.raises(DimensionMismatch):
            cone_measure(TruncatedCone(1.0, 0.0, math.inf, 3), PLANE)


class TestExpansionCoefficients:
    def test_closed_forms_match_quadrature(self):
        coeffs = expansion_coefficients(SPACE, 1.0)
        assert coeffs.I1_quadrature == pytest.approx(coeffs.I1, rel=1e-8)
        assert coeffs.I2_quadrature == pytest.approx(coeffs.I2, rel=1e-8)
        assert coeffs.c0 == pytest.approx(radial_moment(3.0, 2.0))
        assert min(coeffs.I0, coeffs.I1, coeffs.I2, coeffs.M) > 0.0

    @pytest.mark.parametrize("params,alpha", [(SPACE, 1.0), (PLANE, 0.4), (BoundParams(4, 3.0), 1.3)])
    def test_coarea_identity(self, params, alpha):
        coeffs = expansion_coefficients(params, alpha)
        assert coeffs.I0 == pytest.approx(coarea_I0(params, alpha), rel=1e-7)

    @pytest.mark.parametrize("params", [PLANE, SPACE])
    def test_curvature_ratio_trend(self, params):
        n = params.n
        limit = None
        gaps = []
        for alpha in (1.40, 1.50, 1.55):
            c = expansion_coefficients(params, alpha)
            limit = (n - 1) * c.c2 / c.c0
            gaps.append(abs(c.I2 / c.I0 - limit))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 0.01 * limit

    def test_second_order_sign_follows_upper_bound(self):
        coeffs = expansion_coefficients(PLANE, 1.55)
        threshold = upper_bound(PLANE)
        assert second_order_coefficient(coeffs, threshold + 0.05) > 0.0
        assert second_order_coefficient(coeffs, threshold - 0.05) < 0.0

    def test_predicted_deficit_sign(self):
        coeffs = expansion_coefficients(PLANE, 1.40)
        assert predicted_deficit(coeffs, PLANE, 0.5, 0.5, 0.05) < 0.0
        assert predicted_deficit(coeffs, PLANE, 0.25, 0.5, 0.05) > 0.0

    def test_invalid_angle(self):
        with pytest.raises(InvalidParams):
            expansion_coefficients(PLANE, math.pi / 2.0)


class TestExpansionResidual:
    @pytest.mark.parametrize("params,alpha", [(PLANE, 1.0), (SPACE, 1.2)])
    def test_residual_is_third_order(self, params, alpha):
        coarse = expansion_residual(params, alpha, 0.02)
        fine = expansion_residual(params, alpha, 0.01)
        assert abs(coarse) / 0.02 ** 2 >= 1.8 * abs(fine) / 0.01 ** 2
        assert abs(coarse) / 0.02 ** 3 == pytest.approx(abs(fine) / 0.01 ** 3, rel=0.1)

    def test_residual_matches_measure_difference(self):
        alpha, eps = 1.0, 0.05
        coeffs = expansion_coefficients(PLANE, alpha)
        scale = 1.0 / (2.0 * math.pi)
        m_b = cone_measure(TruncatedCone(alpha, eps, math.inf, 2), PLANE).value
        model = coeffs.M * (1.0 + (coeffs.I1 / coeffs.I0) * eps + (coeffs.I2 / (2.0 * coeffs.I0)) * eps ** 2)
        residual = expansion_residual(PLANE, alpha, eps)
        assert m_b - scale * model == pytest.approx(scale * residual, abs=1e-9)

    def test_weight_range(self):
        with pytest.raises(InvalidParams):
            expansion_residual(PLANE, 1.0, 0.01, lam=1.5)
