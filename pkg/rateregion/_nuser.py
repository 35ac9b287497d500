"""n-user frontier as the union of pinned-power hyper-surfaces.

Every Pareto-optimal rate tuple is reached with at least one transmitter at
full power, so the frontier is contained in the union of the n surfaces
F_i = {P : P_i = p_max}.  Each surface is sampled on an inclusive grid over
the remaining n - 1 powers.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from rateregion._channel import (
    ChannelError,
    ChannelSpec,
    NormalizedTwoUser,
    PowerVector,
    RatePoint,
    rate_matrix,
)
from rateregion._frontier2 import points_to_arrays
from rateregion._grid import check_budget, evaluate_rates, pinned_grid, power_axis
from rateregion._hull import hull_3d, pareto_mask
from rateregion._settings import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HyperSurfaceSample:
    """Grid samples of F_i, the surface with transmitter *pinned_index* at ``p_max``.

    ``powers`` and ``rates`` are ``(grid_resolution ** (n - 1), n)`` arrays in
    row-major order over the free powers.
    """

    pinned_index: int
    grid_resolution: int
    powers: np.ndarray
    rates: np.ndarray

    @property
    def points(self) -> list[tuple[PowerVector, RatePoint]]:
        return [
            (PowerVector(powers=p), RatePoint(rates=c))
            for p, c in zip(self.powers, self.rates)
        ]

    def __len__(self) -> int:
        return len(self.powers)


@dataclass(frozen=True, eq=False)
class NUserFrontier:
    """All n sampled surfaces and their merged point cloud."""

    spec: ChannelSpec
    grid_resolution: int
    surfaces: tuple[HyperSurfaceSample, ...]

    @property
    def all_powers(self) -> np.ndarray:
        return np.vstack([s.powers for s in self.surfaces])

    @property
    def all_rates(self) -> np.ndarray:
        return np.vstack([s.rates for s in self.surfaces])

    @property
    def provenance(self) -> np.ndarray:
        """1-based pinned index of the surface each merged point came from."""
        return np.concatenate([np.full(len(s), s.pinned_index) for s in self.surfaces])

    @property
    def all_points(self) -> list[tuple[PowerVector, RatePoint, int]]:
        return [
            (PowerVector(powers=p), RatePoint(rates=c), int(i))
            for p, c, i in zip(self.all_powers, self.all_rates, self.provenance)
        ]

    def pareto_indices(self) -> np.ndarray:
        """Indices into the merged cloud of its Pareto-maximal points."""
        mask = pareto_mask(rates=self.all_rates, powers=self.all_powers)
        return np.flatnonzero(mask)

    def hull_3d(self) -> np.ndarray:
        """Indices into the merged cloud of its 3-D convex-hull vertices."""
        if self.spec.n != 3:
            msg = f"hull_3d needs a three-user channel, got n={self.spec.n}"
            raise ChannelError(msg)
        return hull_3d(points=self.all_rates)

    def to_dict(self) -> dict[str, Any]:
        return {
            "channel": self.spec.to_dict(),
            "grid_resolution": self.grid_resolution,
            "surfaces": [
                {
                    "pinned_index": s.pinned_index,
                    "points": [
                        {"powers": p.tolist(), "rates": c.tolist()}
                        for p, c in zip(s.powers, s.rates)
                    ],
                }
                for s in self.surfaces
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> NUserFrontier:
        spec = ChannelSpec.from_dict(data=data["channel"])
        grid_resolution = int(data["grid_resolution"])
        surfaces = []
        for surface in data["surfaces"]:
            powers, rates = points_to_arrays(points=surface["points"], n=spec.n)
            surfaces.append(
                HyperSurfaceSample(
                    pinned_index=int(surface["pinned_index"]),
                    grid_resolution=grid_resolution,
                    powers=powers,
                    rates=rates,
                )
            )
        return cls(spec=spec, grid_resolution=grid_resolution, surfaces=tuple(surfaces))


def _check_pinned(spec: ChannelSpec, pinned: int) -> None:
    if not 1 <= pinned <= spec.n:
        msg = f"pinned index must lie in [1, {spec.n}], got {pinned}"
        raise ChannelError(msg)


def sample_surface(
    spec: ChannelSpec,
    pinned: int,
    grid_resolution: int,
    *,
    workers: int = 0,
    chunk_size: int = 65_536,
) -> HyperSurfaceSample:
    """Evaluate the rates on the grid of surface F_pinned (1-based)."""
    _check_pinned(spec=spec, pinned=pinned)
    powers = pinned_grid(p_max=spec.p_max, resolution=grid_resolution, n=spec.n, pinned=pinned)
    rates = evaluate_rates(spec=spec, powers=powers, workers=workers, chunk_size=chunk_size)
    powers.setflags(write=False)
    rates.setflags(write=False)
    return HyperSurfaceSample(
        pinned_index=pinned,
        grid_resolution=grid_resolution,
        powers=powers,
        rates=rates,
    )


def surface_monotone_in_pinned_axis(
    spec: ChannelSpec,
    pinned: int,
    free_powers: PowerVector,
    *,
    resolution: int = 101,
) -> bool:
    """Whether C_pinned is nondecreasing as P_pinned sweeps from 0 to ``p_max``.

    *free_powers* lists the other ``n - 1`` powers in index order.
    """
    _check_pinned(spec=spec, pinned=pinned)
    if len(free_powers) != spec.n - 1:
        msg = f"expected {spec.n - 1} free powers, got {len(free_powers)}"
        raise ChannelError(msg)
    sweep = power_axis(p_max=spec.p_max, resolution=resolution)
    fixed = np.tile(free_powers.as_array(), (resolution, 1))
    powers = np.insert(fixed, pinned - 1, sweep, axis=1)
    own = rate_matrix(spec=spec, powers=powers)[:, pinned - 1]
    return bool(np.all(np.diff(own) >= 0.0))


def n_user_frontier(
    spec: ChannelSpec,
    grid_resolution: int,
    *,
    settings: Settings | None = None,
) -> NUserFrontier:
    """Sample all n pinned surfaces, subject to the settings' point budget."""
    settings = settings or Settings()
    if grid_resolution < 2:
        msg = f"grid resolution must be >= 2, got {grid_resolution}"
        raise ValueError(msg)
    total = spec.n * grid_resolution ** (spec.n - 1)
    check_budget(points=total, budget=settings.point_budget, what="n-user frontier")

    surfaces = tuple(
        sample_surface(
            spec=spec,
            pinned=i,
            grid_resolution=grid_resolution,
            workers=settings.workers,
            chunk_size=settings.chunk_size,
        )
        for i in range(1, spec.n + 1)
    )
    logger.debug("n-user frontier: n=%d, %d points", spec.n, total)
    return NUserFrontier(spec=spec, grid_resolution=grid_resolution, surfaces=surfaces)


def effective_two_user(
    spec: ChannelSpec,
    fixed: PowerVector | Sequence[float],
    *,
    users: tuple[int, int] = (1, 2),
) -> NormalizedTwoUser:
    """Two-user channel seen by *users* when every other transmitter is held fixed.

    *fixed* gives the powers of the remaining transmitters in index order.
    Their interference is lumped into each receiver's noise before
    normalising.
    """
    i, j = users
    if i == j:
        msg = f"users must be distinct, got {users}"
        raise ChannelError(msg)
    _check_pinned(spec=spec, pinned=i)
    _check_pinned(spec=spec, pinned=j)
    others = [k for k in range(spec.n) if k not in (i - 1, j - 1)]
    p = np.asarray(list(fixed), dtype=float)
    if len(p) != len(others):
        msg = f"expected {len(others)} fixed powers, got {len(p)}"
        raise ChannelError(msg)
    if np.any(p < 0) or np.any(p > spec.p_max):
        msg = f"fixed powers must lie in [0, {spec.p_max}]"
        raise ChannelError(msg)

    g = spec.gains
    noise_i = spec.noise_power + float(g[i - 1, others] @ p)
    noise_j = spec.noise_power + float(g[j - 1, others] @ p)
    return NormalizedTwoUser(
        a=float(g[i - 1, i - 1]) / noise_i,
        b=float(g[i - 1, j - 1]) / noise_i,
        c=float(g[j - 1, j - 1]) / noise_j,
        d=float(g[j - 1, i - 1]) / noise_j,
        p_max=spec.p_max,
    )
