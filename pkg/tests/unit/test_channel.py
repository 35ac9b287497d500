"""Tests for rateregion._channel."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rateregion._channel import (
    ChannelError,
    ChannelSpec,
    NormalizedTwoUser,
    PowerVector,
    RatePoint,
    db_to_linear,
    normalize,
    rate_matrix,
    rate_tuple,
)
from tests.conftest import random_spec


class TestChannelSpec:
    def test_basic_fields(self):
        spec = ChannelSpec(gains=[[1.0, 0.5], [0.2, 2.0]], noise_power=0.5, p_max=3.0)
        assert spec.n == 2
        assert spec.noise_power == 0.5
        assert spec.p_max == 3.0

    def test_gains_are_read_only(self):
        spec = ChannelSpec(gains=[[1.0]], noise_power=1.0, p_max=1.0)
        with pytest.raises(ValueError):
            spec.gains[0, 0] = 2.0

    def test_frozen(self):
        spec = ChannelSpec(gains=[[1.0]], noise_power=1.0, p_max=1.0)
        with pytest.raises(AttributeError):
            spec.p_max = 2.0  # type: ignore[misc]

    @pytest.mark.parametrize(
        "gains",
        [[[1.0, 2.0]], [], [[1.0, -0.1], [0.0, 1.0]], [[float("nan")]]],
    )
    def test_invalid_gains(self, gains):
        with pytest.raises(ChannelError):
            ChannelSpec(gains=gains, noise_power=1.0, p_max=1.0)

    @pytest.mark.parametrize("noise, p_max", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, math.inf)])
    def test_invalid_scalars(self, noise, p_max):
        with pytest.raises(ChannelError):
            ChannelSpec(gains=[[1.0]], noise_power=noise, p_max=p_max)

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            ChannelSpec(gains=[[1.0]], noise_power=-1.0, p_max=1.0)

    def test_equality_and_hash(self):
        a = ChannelSpec(gains=[[1.0, 2.0], [3.0, 4.0]], noise_power=1.0, p_max=1.0)
        b = ChannelSpec(gains=np.array([[1.0, 2.0], [3.0, 4.0]]), noise_power=1.0, p_max=1.0)
        assert a == b
        assert hash(a) == hash(b)
        assert a != a.scaled(factor=2.0)

    def test_to_dict_from_dict(self):
        spec = ChannelSpec(gains=[[1.0, 0.5], [0.2, 2.0]], noise_power=0.5, p_max=3.0)
        assert ChannelSpec.from_dict(data=spec.to_dict()) == spec
        assert ChannelSpec.from_json(text=spec.to_json()) == spec

    def test_normalized_shorthand(self):
        spec = ChannelSpec.from_dict(
            data={"normalized": {"a": 20, "b": 1, "c": 15, "d": 5, "p_max": 1}}
        )
        assert spec.noise_power == 1.0
        np.testing.assert_array_equal(spec.gains, [[20.0, 1.0], [5.0, 15.0]])

    def test_missing_fields(self):
        with pytest.raises(ChannelError, match="noise_power"):
            ChannelSpec.from_dict(data={"gains": [[1.0]], "p_max": 1.0})
        with pytest.raises(ChannelError, match="'d'"):
            ChannelSpec.from_dict(data={"normalized": {"a": 1, "b": 1, "c": 1, "p_max": 1}})

    def test_declared_n_mismatch(self):
        with pytest.raises(ChannelError, match="n=3"):
            ChannelSpec.from_dict(
                data={"n": 3, "gains": [[1, 0], [0, 1]], "noise_power": 1, "p_max": 1}
            )

    def test_not_an_object(self):
        with pytest.raises(ChannelError):
            ChannelSpec.from_dict(data=[1, 2, 3])  # type: ignore[arg-type]


class TestDecibels:
    def test_db_to_linear(self):
        assert db_to_linear(value_db=0.0) == 1.0
        assert db_to_linear(value_db=10.0) == pytest.approx(10.0)
        assert db_to_linear(value_db=-3.0) == pytest.approx(0.501187, rel=1e-5)

    def test_from_db(self):
        spec = ChannelSpec.from_db(gains_db=[[10.0, 0.0], [0.0, 20.0]], noise_power_db=0.0, p_max_db=0.0)
        np.testing.assert_allclose(spec.gains, [[10.0, 1.0], [1.0, 100.0]])
        assert spec.noise_power == 1.0
        assert spec.p_max == 1.0

    def test_from_dict_db(self):
        spec = ChannelSpec.from_dict(
            data={"gains": [[10.0, 0.0], [0.0, 10.0]], "noise_power": 0.0, "p_max": 0.0},
            db=True,
        )
        np.testing.assert_allclose(spec.gains, [[10.0, 1.0], [1.0, 10.0]])
        assert spec.p_max == pytest.approx(1.0)


class TestRatePoint:
    def test_rejects_negative_and_nan(self):
        with pytest.raises(ChannelError):
            RatePoint(rates=[0.1, -0.2])
        with pytest.raises(ChannelError):
            RatePoint(rates=[float("nan")])

    def test_sequence_protocol(self):
        point = RatePoint(rates=np.array([1.0, 2.0]))
        assert len(point) == 2
        assert point[1] == 2.0
        assert list(point) == [1.0, 2.0]
        assert point.is_close(RatePoint(rates=[1.0, 2.0 + 1e-12]))

    def test_power_vector(self):
        p = PowerVector(powers=[0.5, 1])
        assert p.powers == (0.5, 1.0)
        np.testing.assert_array_equal(p.as_array(), [0.5, 1.0])


class TestRateTuple:
    def test_unit_symmetric_point_b(self):
        spec = ChannelSpec(gains=np.ones((2, 2)), noise_power=1.0, p_max=1.0)
        rates = rate_tuple(spec=spec, p=PowerVector(powers=[1.0, 1.0]))
        assert rates[0] == pytest.approx(math.log2(1.5))
        assert rates[1] == pytest.approx(0.585, abs=1e-3)

    def test_zero_power_gives_zero_rate(self):
        spec = ChannelSpec(gains=np.full((3, 3), 2.0), noise_power=0.1, p_max=5.0)
        rates = rate_tuple(spec=spec, p=PowerVector(powers=[0.0, 0.0, 0.0]))
        assert rates.rates == (0.0, 0.0, 0.0)

    def test_zero_direct_gain_gives_zero_rate(self):
        spec = ChannelSpec(gains=[[0.0, 1.0], [1.0, 1.0]], noise_power=1.0, p_max=1.0)
        rates = rate_tuple(spec=spec, p=PowerVector(powers=[1.0, 1.0]))
        assert rates[0] == 0.0
        assert rates[1] > 0.0

    def test_matches_formula(self):
        g = np.array([[2.0, 0.3, 0.1], [0.4, 1.5, 0.2], [0.05, 0.6, 3.0]])
        spec = ChannelSpec(gains=g, noise_power=0.7, p_max=2.0)
        p = np.array([1.0, 0.5, 2.0])
        rates = rate_tuple(spec=spec, p=PowerVector(powers=p))
        for i in range(3):
            interference = sum(g[i, j] * p[j] for j in range(3) if j != i)
            expected = math.log2(1 + g[i, i] * p[i] / (0.7 + interference))
            assert rates[i] == pytest.approx(expected, rel=1e-12)

    def test_dimension_mismatch(self):
        spec = ChannelSpec(gains=np.ones((2, 2)), noise_power=1.0, p_max=1.0)
        with pytest.raises(ChannelError, match="n=2"):
            rate_tuple(spec=spec, p=PowerVector(powers=[1.0, 1.0, 1.0]))

    @pytest.mark.parametrize("powers", [[1.5, 0.0], [-0.1, 0.5]])
    def test_power_outside_box(self, powers):
        spec = ChannelSpec(gains=np.ones((2, 2)), noise_power=1.0, p_max=1.0)
        with pytest.raises(ChannelError):
            rate_tuple(spec=spec, p=PowerVector(powers=powers))

    def test_rate_matrix_rows(self):
        spec = ChannelSpec(gains=np.ones((2, 2)), noise_power=1.0, p_max=1.0)
        rates = rate_matrix(spec=spec, powers=np.array([[0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(rates[:, 0], [0.0, math.log2(1.5), 1.0])
        np.testing.assert_allclose(rates[:, 1], [1.0, math.log2(1.5), 0.0])


class TestNormalize:
    def test_divides_by_noise(self):
        spec = ChannelSpec(gains=[[4.0, 2.0], [1.0, 6.0]], noise_power=2.0, p_max=1.5)
        ch = normalize(spec=spec)
        assert (ch.a, ch.b, ch.c, ch.d) == (2.0, 1.0, 3.0, 0.5)
        assert ch.p_max == 1.5

    def test_rejects_other_n(self, three_user_unit):
        with pytest.raises(ChannelError, match="n=3"):
            normalize(spec=three_user_unit)

    def test_to_spec_round_trip(self, inflected):
        assert normalize(spec=inflected.to_spec()) == inflected

    def test_rates_agree_with_spec(self, inflected):
        spec = inflected.to_spec()
        rates = rate_tuple(spec=spec, p=PowerVector(powers=[0.3, 0.8]))
        assert inflected.rates(p1=0.3, p2=0.8) == pytest.approx(rates.rates, rel=1e-12)


class TestNormalizedTwoUser:
    def test_rejects_negative_gain(self):
        with pytest.raises(ChannelError):
            NormalizedTwoUser(a=1.0, b=-1.0, c=1.0, d=1.0, p_max=1.0)

    def test_symmetric(self):
        ch = NormalizedTwoUser.symmetric(a=3.0, b=0.5, p_max=2.0)
        assert ch.is_symmetric
        assert (ch.c, ch.d) == (3.0, 0.5)

    def test_swapped(self, inflected):
        swapped = inflected.swapped()
        assert (swapped.a, swapped.b, swapped.c, swapped.d) == (15.0, 5.0, 20.0, 1.0)
        assert swapped.swapped() == inflected
        c1, c2 = inflected.rates(p1=0.2, p2=0.9)
        s1, s2 = swapped.rates(p1=0.9, p2=0.2)
        assert (c1, c2) == pytest.approx((s2, s1))

    def test_dict_round_trip(self, inflected):
        assert NormalizedTwoUser.from_dict(data=inflected.to_dict()) == inflected

    def test_from_dict_missing_field(self):
        with pytest.raises(ChannelError, match="'d'"):
            NormalizedTwoUser.from_dict(data={"a": 1.0, "b": 1.0, "c": 1.0, "p_max": 1.0})


class TestRateProperties:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("factor", [1e-3, 7.5, 1e4])
    def test_common_scaling_leaves_rates_unchanged(self, rng, n, factor):
        spec = random_spec(rng=rng, n=n)
        powers = rng.uniform(0.0, spec.p_max, size=(50, n))
        np.testing.assert_allclose(
            rate_matrix(spec=spec.scaled(factor=factor), powers=powers),
            rate_matrix(spec=spec, powers=powers),
            rtol=1e-12,
            atol=1e-15,
        )

    @pytest.mark.parametrize("n", [2, 3])
    def test_rate_non_increasing_in_interfering_power(self, rng, n):
        spec = random_spec(rng=rng, n=n)
        sweep = np.linspace(0.0, spec.p_max, 25)
        for base in rng.uniform(0.0, spec.p_max, size=(10, n)):
            for j in range(n):
                powers = np.tile(base, (len(sweep), 1))
                powers[:, j] = sweep
                rates = rate_matrix(spec=spec, powers=powers)
                for i in range(n):
                    steps = np.diff(rates[:, i])
                    if i == j:
                        assert np.all(steps >= -1e-12)
                    else:
                        assert np.all(steps <= 1e-12)
