"""Tests for rateregion._hull."""

from __future__ import annotations

import numpy as np
import pytest

from rateregion._hull import decimals_for_tolerance, envelope_at, hull_3d, pareto_mask, upper_chain


class TestUpperChain:
    def test_square_corner(self):
        pts = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 1.0], [1.0, 0.0], [0.2, 0.3]])
        chain = upper_chain(points=pts)
        np.testing.assert_array_equal(pts[chain], [[0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])

    def test_drops_collinear_points(self):
        pts = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
        chain = upper_chain(points=pts)
        assert chain.tolist() == [0, 2]

    def test_drops_duplicates(self):
        pts = np.array([[0.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
        assert len(upper_chain(points=pts)) == 2

    def test_concave_curve_keeps_every_sample(self):
        x = np.linspace(0.0, 1.0, 20)
        pts = np.column_stack((x, 1.0 - x**2))
        assert len(upper_chain(points=pts)) == 20

    def test_convex_curve_keeps_endpoints(self):
        x = np.linspace(0.0, 1.0, 20)
        pts = np.column_stack((x, (1.0 - x) ** 2))
        assert upper_chain(points=pts).tolist() == [0, 19]

    def test_empty_and_bad_shape(self):
        assert len(upper_chain(points=np.empty((0, 2)))) == 0
        with pytest.raises(ValueError):
            upper_chain(points=np.ones((3, 3)))


class TestEnvelopeAt:
    def test_interpolates(self):
        v = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(envelope_at(vertices=v, x=[0.0, 0.25, 1.0]), [1.0, 0.75, 0.0])

    def test_beyond_last_vertex(self):
        v = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert envelope_at(vertices=v, x=1.5)[0] == -np.inf

    def test_vertical_drop_keeps_upper_value(self):
        v = np.array([[0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
        assert envelope_at(vertices=v, x=1.0)[0] == 1.0

    def test_single_vertex(self):
        v = np.array([[0.5, 2.0]])
        np.testing.assert_array_equal(envelope_at(vertices=v, x=[0.0, 0.5, 0.6]), [2.0, 2.0, -np.inf])


class TestParetoMask:
    def test_two_dimensional(self):
        rates = np.array([[1.0, 0.0], [0.5, 0.5], [0.4, 0.4], [0.0, 1.0], [0.5, 0.2]])
        assert pareto_mask(rates=rates).tolist() == [True, True, False, True, False]

    def test_ties_keep_smallest_powers(self):
        rates = np.array([[1.0, 1.0], [1.0, 1.0]])
        powers = np.array([[0.9, 1.0], [0.2, 1.0]])
        assert pareto_mask(rates=rates, powers=powers).tolist() == [False, True]

    def test_weak_dominance_removes_point(self):
        rates = np.array([[1.0, 1.0], [1.0, 0.5]])
        assert pareto_mask(rates=rates).tolist() == [True, False]

    def test_three_dimensional(self):
        rates = np.array(
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.5, 0.5, 0.5], [0.4, 0.5, 0.5]]
        )
        assert pareto_mask(rates=rates).tolist() == [True, True, True, True, False]

    def test_matches_brute_force(self, rng):
        rates = rng.random((200, 3))
        mask = pareto_mask(rates=rates)
        for i, row in enumerate(rates):
            others = np.delete(rates, i, axis=0)
            dominated = np.any(np.all(others >= row, axis=1) & np.any(others > row, axis=1))
            assert mask[i] == (not dominated)

    def test_single_column(self):
        assert pareto_mask(rates=np.array([[0.2], [0.7], [0.7]])).tolist() == [False, True, False]

    @pytest.mark.parametrize("n", [3, 4])
    def test_large_cloud_with_repeats(self, rng, n):
        # Spans several comparison blocks; small integers force many identical rows.
        rates = rng.integers(0, 6, size=(1500, n)).astype(float)
        mask = pareto_mask(rates=rates)
        for i, row in enumerate(rates):
            ge = np.all(rates >= row, axis=1)
            strictly = ge & np.any(rates > row, axis=1)
            repeated_earlier = np.any(np.all(rates[:i] == row, axis=1))
            assert mask[i] == (not np.any(strictly) and not repeated_earlier)

    def test_full_grid_cloud(self, rng):
        rates = rng.random((26**3, 3))
        mask = pareto_mask(rates=rates)
        kept = rates[mask]
        assert len(kept) > 0
        for row in rates[rng.choice(len(rates), size=200, replace=False)]:
            assert np.any(np.all(kept >= row, axis=1))


class TestDecimalsForTolerance:
    @pytest.mark.parametrize("tol, decimals", [(1e-9, 9), (1e-6, 6), (5e-4, 3), (1.0, 0), (1e-20, 15)])
    def test_values(self, tol, decimals):
        assert decimals_for_tolerance(tol=tol) == decimals

    @pytest.mark.parametrize("tol", [0.0, -1e-9, float("inf")])
    def test_rejects_non_positive(self, tol):
        with pytest.raises(ValueError):
            decimals_for_tolerance(tol=tol)


class TestHull3d:
    def test_tetrahedron_with_interior_point(self):
        pts = np.array(
            [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0.1, 0.1, 0.1]], dtype=float
        )
        assert hull_3d(points=pts).tolist() == [0, 1, 2, 3]

    def test_flat_cloud_returns_everything(self):
        pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
        assert hull_3d(points=pts).tolist() == [0, 1, 2, 3]

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            hull_3d(points=np.ones((4, 2)))
