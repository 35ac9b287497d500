"""Tests for rateregion._grid."""

from __future__ import annotations

import numpy as np
import pytest

from rateregion._channel import rate_matrix
from rateregion._grid import (
    BudgetExceededError,
    check_budget,
    evaluate_rates,
    pinned_grid,
    power_axis,
    power_grid,
)
from tests.conftest import random_spec


class TestBudget:
    def test_within_budget(self):
        check_budget(points=10, budget=10)

    def test_over_budget(self):
        with pytest.raises(BudgetExceededError, match="1,001"):
            check_budget(points=1001, budget=1000, what="oracle grid")

    def test_is_value_error(self):
        with pytest.raises(ValueError):
            check_budget(points=2, budget=1)


class TestPowerGrid:
    def test_axis_is_inclusive(self):
        axis = power_axis(p_max=3.0, resolution=7)
        assert axis[0] == 0.0
        assert axis[-1] == 3.0
        assert len(axis) == 7

    def test_axis_needs_two_points(self):
        with pytest.raises(ValueError):
            power_axis(p_max=1.0, resolution=1)

    def test_count_and_order(self):
        grid = power_grid(p_max=1.0, resolution=3, dims=2)
        assert grid.shape == (9, 2)
        np.testing.assert_array_equal(grid[:3], [[0.0, 0.0], [0.0, 0.5], [0.0, 1.0]])
        np.testing.assert_array_equal(grid[-1], [1.0, 1.0])

    def test_zero_dims(self):
        assert power_grid(p_max=1.0, resolution=5, dims=0).shape == (1, 0)

    def test_pinned_grid_fixes_column(self):
        grid = pinned_grid(p_max=2.0, resolution=4, n=3, pinned=2)
        assert grid.shape == (16, 3)
        assert np.all(grid[:, 1] == 2.0)
        assert len({tuple(row) for row in grid}) == 16

    def test_single_user_pinned_grid(self):
        np.testing.assert_array_equal(pinned_grid(p_max=1.5, resolution=9, n=1, pinned=1), [[1.5]])


class TestEvaluateRates:
    def test_matches_rate_matrix(self, three_user_unit):
        powers = power_grid(p_max=1.0, resolution=4, dims=3)
        np.testing.assert_array_equal(
            evaluate_rates(spec=three_user_unit, powers=powers),
            rate_matrix(spec=three_user_unit, powers=powers),
        )

    def test_pool_gives_identical_rows(self, rng):
        spec = random_spec(rng=rng, n=3)
        powers = power_grid(p_max=1.0, resolution=9, dims=3)
        serial = evaluate_rates(spec=spec, powers=powers, workers=0)
        parallel = evaluate_rates(spec=spec, powers=powers, workers=2, chunk_size=100)
        np.testing.assert_allclose(serial, parallel, rtol=1e-13)
