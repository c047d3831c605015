import math

import pytest

from python.bounds.bound_formulas import BoundParams
from python.errors import InvalidParams
from python.geometry.bodies import TruncatedCone
from python.verify.counterexample import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_EPS_GRID,
    WITNESS_COLUMNS,
    CounterexampleWitness,
    cone_deficit,
    cone_pair,
    counterexample_search,
)

PLANE = BoundParams(2, 2.0)


def _witness(**overrides):
    fields = dict(alpha=1.4, eps=0.05, R=30.0, lam=0.5, q=0.5, deficit=-1e-6, error=1e-9)
    fields.update(overrides)
    return CounterexampleWitness(**fields)


class TestWitness:
    def test_valid_witness(self):
        row = _witness().as_row()
        assert list(row) == WITNESS_COLUMNS
        assert row["deficit"] == -1e-6
        assert math.isnan(row["predicted"])

    @pytest.mark.parametrize("overrides", [{"q": 0.0}, {"deficit": -1e-9}, {"deficit": 1e-3}])
    def test_uncertified_witness_rejected(self, overrides):
        with pytest.raises(InvalidParams):
            _witness(**overrides)


class TestSearchInputs:
    def test_cone_pair(self):
        a, b = cone_pair(BoundParams(3, 2.0), 1.45, 0.1)
        assert a == TruncatedCone(1.45, 0.0, 30.0, 3)
        assert b == TruncatedCone(1.45, 0.1, 30.0, 3)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"q": 0.0},
            {"q": -0.5},
            {"q": 0.5, "lam": 1.0},
            {"q": 0.5, "lam": 0.0},
            {"q": 0.5, "eps_grid": (0.05, 0.0)},
            {"q": 0.5, "alpha_grid": ()},
            {"q": 0.5, "eps_grid": ()},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParams):
            counterexample_search(PLANE, **kwargs)

    def test_default_grids(self):
        assert DEFAULT_ALPHA_GRID == (1.40, 1.45, 1.50, 1.52, 1.55)
        assert DEFAULT_EPS_GRID == (0.05, 0.1, 0.2)


@pytest.mark.slow
class TestSearch:
    def test_single_cone_deficit_is_negative(self):
        report = cone_deficit(PLANE, 0.5, 1.40, 0.05)
        assert report.violated
        assert report.mu_k < report.mu_mix < report.mu_l

    @pytest.mark.parametrize("q", [0.5, 0.4])
    def test_witness_above_upper_bound(self, q):
        witness = counterexample_search(PLANE, q)
        assert witness is not None
        assert witness.q == q
        assert witness.alpha in DEFAULT_ALPHA_GRID
        assert witness.eps in DEFAULT_EPS_GRID
        assert witness.deficit < -5.0 * witness.error
        assert witness.predicted < 0.0

    def test_no_witness_below_lower_bound(self):
        assert counterexample_search(PLANE, 0.25) is None
