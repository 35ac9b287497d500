"""Shared fixtures for rateregion tests."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from rateregion import ChannelSpec, NormalizedTwoUser


@pytest.fixture()
def unit_symmetric() -> NormalizedTwoUser:
    """All normalized gains 1, p_max 1."""
    return NormalizedTwoUser(a=1.0, b=1.0, c=1.0, d=1.0, p_max=1.0)


@pytest.fixture()
def inflected() -> NormalizedTwoUser:
    """a=20, b=1, c=15, d=5, p_max=1: F2 has an inflection point."""
    return NormalizedTwoUser(a=20.0, b=1.0, c=15.0, d=5.0, p_max=1.0)


@pytest.fixture()
def strong_symmetric() -> NormalizedTwoUser:
    """a=c=1, b=d=2, p_max=1: cross gains above the symmetric threshold."""
    return NormalizedTwoUser.symmetric(a=1.0, b=2.0, p_max=1.0)


@pytest.fixture()
def decoupled() -> NormalizedTwoUser:
    """a=c=1 with no interference."""
    return NormalizedTwoUser.symmetric(a=1.0, b=0.0, p_max=1.0)


@pytest.fixture()
def three_user_unit() -> ChannelSpec:
    """Three users, every gain 1, unit noise and p_max."""
    return ChannelSpec(gains=np.ones((3, 3)), noise_power=1.0, p_max=1.0)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(seed=20240611)


@pytest.fixture()
def channel_file(tmp_path: Path, inflected: NormalizedTwoUser) -> Path:
    """The inflected channel written as a full channel JSON document."""
    path = tmp_path / "channel.json"
    path.write_text(inflected.to_spec().to_json(), encoding="utf-8")
    return path


@pytest.fixture()
def normalized_file(tmp_path: Path) -> Path:
    """Unit-symmetric channel in the normalized shorthand."""
    path = tmp_path / "normalized.json"
    doc = {"normalized": {"a": 1, "b": 1, "c": 1, "d": 1, "p_max": 1}}
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def random_spec(rng: np.random.Generator, n: int, low: float = 0.1, high: float = 10.0) -> ChannelSpec:
    """Channel with log-uniform gains in ``[low, high]``, unit noise and p_max."""
    gains = np.exp(rng.uniform(np.log(low), np.log(high), size=(n, n)))
    return ChannelSpec(gains=gains, noise_power=1.0, p_max=1.0)
