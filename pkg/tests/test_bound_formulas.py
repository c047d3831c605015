import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from python.bounds.bound_formulas import (
    CLOSED_FORM,
    INTEGRAL,
    LIMIT_P1,
    BoundParams,
    bound_pair,
    jensen_reference,
    large_p_limit,
    lower_bound,
    lower_bound_asymptotic_n,
    lower_bound_closed_form,
    lower_bound_integral,
    lower_bound_pair,
    lower_bound_route,
    upper_bound,
    upper_bound_asymptotic_n,
    violation_threshold,
)
from python.errors import InvalidParams
from python.format_utils import fmt_interval

mpmath.mp.dps = 50


def _mp_lower(n, p):
    k = mpmath.mpf(n) / p
    a = (mpmath.mpf(p) - 1) * n / p
    return mpmath.exp(a) * a ** k * mpmath.gammainc(1 - k, a) / n


def _mp_upper(n, p):
    p = mpmath.mpf(p)
    ratio = mpmath.gamma(n / p) * mpmath.gamma((n + p - 2) / p) / mpmath.gamma((n - 1) / p) ** 2
    return 1 - p / (n - 1) * ratio


class TestBoundTable:
    @pytest.mark.parametrize(
        "n,p,expected",
        [
            (2, 2.0, "[0.298, 0.363]"),
            (3, 2.0, "[0.190, 0.215]"),
            (4, 2.0, "[0.139, 0.151]"),
        ],
    )
    def test_three_decimal_intervals(self, n, p, expected):
        pair = bound_pair(BoundParams(n, p))
        assert fmt_interval(pair.lower, pair.upper, 3) == expected

    @pytest.mark.parametrize("n,p", [(2, 2.0), (3, 2.0), (4, 2.0), (5, 3.0), (9, 1.5)])
    def test_match_high_precision_values(self, n, p):
        pair = bound_pair(BoundParams(n, p))
        assert abs(pair.lower - float(_mp_lower(n, p))) <= 1e-9
        assert abs(pair.upper - float(_mp_upper(n, p))) <= 1e-9

    @pytest.mark.parametrize(
        "n,p,lower,upper",
        [(3, 2.0, 0.189, 0.215), (4, 2.0, 0.138, 0.152)],
    )
    def test_published_table_within_last_digit(self, n, p, lower, upper):
        pair = bound_pair(BoundParams(n, p))
        assert abs(pair.lower - lower) <= 1e-3
        assert abs(pair.upper - upper) <= 1e-3

    def test_lower_bound_plane_anchor(self):
        """lower(2, 2) = (e/2) Γ(0, 1) with Γ(0, 1) = ∫_1^∞ e^{-t}/t dt."""
        gamma01 = mpmath.quad(lambda t: mpmath.exp(-t) / t, [1, mpmath.inf])
        expected = float(mpmath.e / 2 * gamma01)
        assert abs(lower_bound(BoundParams(2, 2.0)) - expected) <= 1e-9

    def test_upper_bound_plane_anchor(self):
        assert abs(upper_bound(BoundParams(2, 2.0)) - (1.0 - 2.0 / math.pi)) <= 1e-12

    @pytest.mark.parametrize("n", [2, 3, 7, 40])
    def test_p_one_is_exactly_zero(self, n):
        params = BoundParams(n, 1.0)
        pair = bound_pair(params)
        assert pair.lower == 0.0
        assert pair.upper == 0.0
        assert pair.method == LIMIT_P1


class TestEvaluationRoutes:
    def test_route_selection(self):
        assert lower_bound_route(BoundParams(3, 2.0)) == CLOSED_FORM
        assert lower_bound_route(BoundParams(400, 2.0)) == INTEGRAL
        assert lower_bound_route(BoundParams(5, 1.0)) == LIMIT_P1

    def test_routes_agree_on_grid(self):
        worst = 0.0
        for p in (1.1, 1.5, 2.0, 3.0, 10.0):
            for n in range(2, 101):
                params = BoundParams(n, p)
                closed = lower_bound_closed_form(params)
                integral = lower_bound_integral(params)
                worst = max(worst, abs(closed - integral) / integral)
        assert worst <= 1e-9

    def test_forced_route_is_reported(self):
        params = BoundParams(6, 2.5)
        value, route = lower_bound_pair(params, INTEGRAL)
        assert route == INTEGRAL
        assert value == pytest.approx(lower_bound_closed_form(params), rel=1e-9)
        with pytest.raises(InvalidParams):
            lower_bound_pair(params, "series")


class TestOrderingAndReferences:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 10.0])
    def test_ordering_on_grid(self, p):
        for n in range(2, 21):
            params = BoundParams(n, p)
            lo, up = lower_bound(params), upper_bound(params)
            assert 0.0 <= lo <= up
            assert up < 1.0 / n

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=2, max_value=60), st.floats(min_value=1.01, max_value=50.0, allow_nan=False))
    def test_lower_never_exceeds_upper(self, n, p):
        params = BoundParams(n, p)
        assert lower_bound(params) <= upper_bound(params) + 1e-12

    @pytest.mark.parametrize("n,p", [(2, 2.0), (3, 2.0), (4, 3.0)])
    def test_strictly_above_jensen_reference(self, n, p):
        params = BoundParams(n, p)
        assert lower_bound(params) - jensen_reference(params) > 1e-4

    @pytest.mark.parametrize("n,p", [(2, 2.0), (3, 1.5), (5, 3.0), (12, 10.0)])
    def test_violation_threshold_matches_upper_bound(self, n, p):
        params = BoundParams(n, p)
        assert violation_threshold(params) == pytest.approx(upper_bound(params), rel=1e-12, abs=1e-15)


class TestAsymptotics:
    def test_two_term_lower_expansion(self):
        assert lower_bound_asymptotic_n(BoundParams(100, 2.0)) == pytest.approx(0.005025, abs=1e-15)
        assert upper_bound_asymptotic_n(BoundParams(100, 2.0)) == pytest.approx(0.005, abs=1e-15)

    def test_expansions_vanish_at_p_one(self):
        assert lower_bound_asymptotic_n(BoundParams(9, 1.0)) == 0.0
        assert upper_bound_asymptotic_n(BoundParams(9, 1.0)) == 0.0

    def test_leading_terms_are_shared(self):
        for n in (50, 200, 800):
            params = BoundParams(n, 2.0)
            leading = upper_bound_asymptotic_n(params)
            assert n * abs(lower_bound(params) - leading) < 0.01
            assert n * abs(upper_bound(params) - leading) < 0.01

    def test_large_p_limit(self):
        assert large_p_limit(2) == 0.5
        params = BoundParams(3, 1e4)
        assert abs(lower_bound(params) - 1.0 / 3.0) <= 2e-3
        assert abs(upper_bound(params) - 1.0 / 3.0) <= 1e-5
        with pytest.raises(InvalidParams):
            large_p_limit(1)


class TestBoundParams:
    def test_integral_float_dimension_accepted(self):
        params = BoundParams(3.0, 2)
        assert params.n == 3 and isinstance(params.n, int)
        assert params.a == pytest.approx(1.5)

    @pytest.mark.parametrize(
        "n,p",
        [(1, 2.0), (2.5, 2.0), (True, 2.0), (3, 0.5), (3, float("nan")), (3, float("inf"))],
    )
    def test_invalid(self, n, p):
        with pytest.raises(InvalidParams):
            BoundParams(n, p)
