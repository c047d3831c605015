import pytest

from python.bounds.bound_formulas import BoundParams, lower_bound, upper_bound
from python.bounds.bound_tables import (
    ASYMPTOTIC_COLUMNS,
    CURVE_COLUMNS,
    TABLE_COLUMNS,
    build_asymptotic_rows,
    build_bound_rows,
    build_curve_rows,
    fit_convergence_order,
    residual_spread,
)

N_VALUES = [50, 100, 200, 400]


def test_bound_rows_cover_the_grid():
    rows = build_bound_rows([2, 3, 4], [1.5, 2.0])
    assert len(rows) == 6
    assert all(set(TABLE_COLUMNS) <= set(r) for r in rows)
    assert [(r["n"], r["p"]) for r in rows[:3]] == [(2, 1.5), (3, 1.5), (4, 1.5)]
    assert all(r["jensen_gap"] > 0.0 for r in rows)


def test_curve_rows_match_direct_evaluation():
    rows = build_curve_rows("n", 2.0, [2, 3, 10])
    assert [r["x"] for r in rows] == [2, 3, 10]
    assert rows[0]["lower"] == lower_bound(BoundParams(2, 2.0))
    assert rows[0]["upper"] == upper_bound(BoundParams(2, 2.0))
    assert all(set(r) == set(CURVE_COLUMNS) for r in rows)


def test_bound_curves_between_reference_curves():
    rows = build_curve_rows("n", 2.0, range(3, 51))
    for r in rows:
        assert r["ref_kl"] <= r["lower"] <= r["upper"] <= r["ref_trivial"]


def test_curves_in_p_approach_classical_exponent():
    rows = build_curve_rows("p", 3.0, [1.0, 2.0, 10.0, 100.0])
    assert rows[0]["lower"] == 0.0 and rows[0]["upper"] == 0.0
    gaps = [1.0 / 3.0 - r["upper"] for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


class TestAsymptoticRows:
    def test_columns(self):
        rows = build_asymptotic_rows(2.0, N_VALUES)
        assert [r["n"] for r in rows] == N_VALUES
        assert all(set(r) == set(ASYMPTOTIC_COLUMNS) for r in rows)

    def test_two_term_value(self):
        (row,) = build_asymptotic_rows(2.0, [100])
        assert row["f1_two_term"] == pytest.approx(0.005025, abs=1e-15)
        assert row["leading"] == pytest.approx(0.005, abs=1e-15)

    def test_lower_expansion_converges_cubically(self):
        rows = build_asymptotic_rows(2.0, N_VALUES)
        slope = fit_convergence_order([r["n"] for r in rows], [r["f1_expansion_error"] for r in rows])
        assert slope is not None
        assert slope <= -2.7

    def test_upper_residual_is_bounded(self):
        rows = build_asymptotic_rows(2.0, N_VALUES)
        spread = residual_spread([r["f2_residual_n2"] for r in rows])
        assert spread is not None
        assert spread < 0.25

    def test_p_one_is_all_zero(self):
        rows = build_asymptotic_rows(1.0, [50, 100])
        for r in rows:
            assert r["f1"] == r["f2"] == r["leading"] == r["f1_two_term"] == 0.0


def test_fit_and_spread_need_data():
    assert fit_convergence_order([10], [1e-3]) is None
    assert fit_convergence_order([10, 20], [0.0, 0.0]) is None
    assert residual_spread([]) is None
    assert fit_convergence_order([10, 100], [1e-2, 1e-5]) == pytest.approx(-3.0)
