import math

import numpy as np
import pytest

from python.bounds.bound_formulas import BoundParams
from python.errors import DimensionMismatch, InvalidParams
from python.geometry.bodies import Ball, HPolytope, Polygon2D, TruncatedCone
from python.geometry.polygons import rotate_polygon, square
from python.measure.gaussian_measure import (
    DETERMINISTIC,
    MONTE_CARLO_CI,
    MeasureValue,
    measure_of,
    mu,
    radial_mass,
)
from python.measure.quadrature import (
    EXACT_ANGLE_2D,
    MONTE_CARLO,
    QuadratureSpec,
    product_rule_3d,
    sphere_directions,
)

PLANE = BoundParams(2, 2.0)
TRIANGLE = Polygon2D(((-0.5, -0.4), (2.5, -0.2), (0.3, 1.8)))


class TestRadialMass:
    def test_unit_radius_plane(self):
        assert radial_mass(2, 2.0, 1.0) == pytest.approx(1.0 - math.exp(-0.5), rel=1e-14)

    @pytest.mark.parametrize("n,p", [(2, 2.0), (3, 2.0), (3, 3.0), (7, 1.5)])
    def test_full_mass(self, n, p):
        expected = p ** (n / p - 1.0) * math.gamma(n / p)
        assert radial_mass(n, p, math.inf) == pytest.approx(expected, rel=1e-13)

    def test_zero_radius(self):
        assert radial_mass(3, 2.0, 0.0) == 0.0

    @pytest.mark.parametrize("args", [(0, 2.0, 1.0), (2, 0.5, 1.0), (2, 2.0, -1.0)])
    def test_invalid(self, args):
        with pytest.raises(InvalidParams):
            radial_mass(*args)


class TestMu:
    def test_unit_ball_plane(self):
        expected = 1.0 - math.exp(-0.5)
        assert mu(Ball(1.0), PLANE).value == pytest.approx(expected, abs=1e-12)
        assert measure_of(Ball(1.0), PLANE).value == pytest.approx(0.3934693, abs=1e-7)

    @pytest.mark.parametrize("n,p", [(2, 2.0), (3, 2.0), (3, 3.0)])
    def test_large_ball_normalization(self, n, p):
        radius = (p * (n / p + 40.0)) ** (1.0 / p)
        params = BoundParams(n, p)
        assert abs(measure_of(Ball(radius, n), params).value - 1.0) <= 1e-8
        assert abs(mu(Ball(radius, n), params).value - 1.0) <= 1e-8

    def test_half_plane(self):
        half = HPolytope(((0.0, -1.0),), (0.0,))
        assert mu(half, PLANE).value == pytest.approx(0.5, abs=1e-12)

    def test_quarter_wedge(self):
        wedge = TruncatedCone(math.pi / 4.0, 0.0, math.inf, 2)
        assert mu(wedge, PLANE).value == pytest.approx(0.25, abs=1e-12)

    def test_rotation_invariance(self):
        a = mu(TRIANGLE, PLANE)
        b = mu(rotate_polygon(TRIANGLE, 0.7), PLANE)
        assert abs(a.value - b.value) <= a.abs_error + b.abs_error + 1e-10

    def test_monotone_under_inclusion(self):
        small, large = measure_of(square(1.0), PLANE), measure_of(square(1.5), PLANE)
        assert small.value <= large.value + small.abs_error + large.abs_error

    def test_square_matches_product_of_error_functions(self):
        expected = math.erf(1.0 / math.sqrt(2.0)) ** 2
        m = mu(square(1.0), PLANE)
        assert m.kind == DETERMINISTIC
        assert m.value == pytest.approx(expected, abs=1e-10)
        assert m.abs_error < 1e-8

    def test_cube_in_three_dimensions(self):
        cube = HPolytope(tuple(tuple(r) for r in np.vstack([np.eye(3), -np.eye(3)])), (1.0,) * 6)
        expected = math.erf(1.0 / math.sqrt(2.0)) ** 3
        m = mu(cube, BoundParams(3, 2.0), QuadratureSpec.default_for(3, sphere_points=256))
        assert abs(m.value - expected) <= max(10.0 * m.abs_error, 1e-3)

    def test_monte_carlo_in_four_dimensions(self):
        params = BoundParams(4, 2.0)
        m = mu(HPolytope(tuple(tuple(r) for r in np.vstack([np.eye(4), -np.eye(4)])), (1.0,) * 8), params)
        assert m.kind == MONTE_CARLO_CI
        expected = math.erf(1.0 / math.sqrt(2.0)) ** 4
        assert abs(m.value - expected) <= 2.0 * m.abs_error

    def test_monte_carlo_is_seed_determined(self):
        spec = QuadratureSpec(sphere_rule=MONTE_CARLO, samples=5000, seed=9)
        body = Ball(1.0, 2)
        poly = square(0.8)
        assert mu(poly, PLANE, spec) == mu(poly, PLANE, spec)
        assert mu(body, PLANE, spec).value == pytest.approx(1.0 - math.exp(-0.5), abs=1e-12)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            mu(Ball(1.0, 3), PLANE)
        with pytest.raises(DimensionMismatch):
            mu(Ball(1.0, 3), BoundParams(3, 2.0), QuadratureSpec(sphere_rule=EXACT_ANGLE_2D))
        with pytest.raises(DimensionMismatch):
            measure_of(Ball(1.0, 3), PLANE)


class TestQuadratureSpec:
    def test_defaults_by_dimension(self):
        assert QuadratureSpec.default_for(2).sphere_rule == "exact-angle-2d"
        assert QuadratureSpec.default_for(3).sphere_rule == "product-gauss-3d"
        assert QuadratureSpec.default_for(6).sphere_rule == "monte-carlo"

    def test_tightened(self):
        spec = QuadratureSpec(radial_tol=1e-10, sphere_points=32)
        tight = spec.tightened()
        assert tight.radial_tol == pytest.approx(1e-12)
        assert tight.sphere_points == 64

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"sphere_rule": "lebedev"},
            {"radial_tol": 0.0},
            {"sphere_points": 2},
            {"sphere_rule": MONTE_CARLO, "samples": 10},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParams):
            QuadratureSpec(**kwargs)

    def test_product_rule_weights(self):
        dirs, weights = product_rule_3d(32)
        assert weights.sum() == pytest.approx(1.0, abs=1e-14)
        np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)

    def test_sphere_directions_are_unit(self):
        dirs = sphere_directions(5, 100, seed=1)
        np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)
        np.testing.assert_array_equal(dirs, sphere_directions(5, 100, seed=1))


def test_measure_value_rejects_negative_error():
    with pytest.raises(InvalidParams):
        MeasureValue(0.5, -1e-3)
