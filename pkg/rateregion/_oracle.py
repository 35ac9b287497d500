"""Brute-force Pareto oracle over the full power box.

Every power tuple of an inclusive grid over ``[0, p_max]^n`` is evaluated;
the maximal rate tuples form a :class:`ParetoCloud` against which the
analytic constructions are checked.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from rateregion._channel import ChannelSpec, PowerVector, RatePoint, normalize
from rateregion._frontier2 import TwoUserFrontier, points_to_arrays
from rateregion._grid import check_budget, evaluate_rates, power_grid
from rateregion._hull import envelope_at, pareto_mask, upper_chain
from rateregion._nuser import NUserFrontier
from rateregion._settings import Settings

logger = logging.getLogger(__name__)


class SpecMismatchError(ValueError):
    """The oracle cloud and the analytic frontier describe different channels."""


@dataclass(frozen=True, eq=False)
class ParetoCloud:
    """Grid-maximal rate tuples of one channel.

    ``grid_powers`` / ``grid_rates`` hold every evaluated tuple in row-major
    grid order and ``is_pareto`` flags the maximal ones.  ``rate_tolerance``
    is the discretisation tolerance of this grid.
    """

    spec: ChannelSpec
    grid_resolution: int
    grid_powers: np.ndarray
    grid_rates: np.ndarray
    is_pareto: np.ndarray
    rate_tolerance: float

    @property
    def powers(self) -> np.ndarray:
        return self.grid_powers[self.is_pareto]

    @property
    def rates(self) -> np.ndarray:
        return self.grid_rates[self.is_pareto]

    @property
    def points(self) -> list[tuple[PowerVector, RatePoint]]:
        return [
            (PowerVector(powers=p), RatePoint(rates=c))
            for p, c in zip(self.powers, self.rates)
        ]

    @property
    def dominated_count(self) -> int:
        return int(len(self.is_pareto) - np.count_nonzero(self.is_pareto))

    @property
    def pinned_indices(self) -> np.ndarray:
        """Per grid point, the first transmitter at ``p_max`` (1-based, 0 if none)."""
        at_max = self.grid_powers == self.spec.p_max
        return np.where(at_max.any(axis=1), at_max.argmax(axis=1) + 1, 0)

    def __len__(self) -> int:
        return int(np.count_nonzero(self.is_pareto))

    def to_dict(self) -> dict[str, Any]:
        """Every grid point, laid out like an n-user surface plus ``is_pareto``."""
        return {
            "channel": self.spec.to_dict(),
            "grid_resolution": self.grid_resolution,
            "rate_tolerance": self.rate_tolerance,
            "pareto_points": len(self),
            "dominated_count": self.dominated_count,
            "points": [
                {
                    "powers": p.tolist(),
                    "rates": c.tolist(),
                    "pinned_index": int(i),
                    "is_pareto": bool(flag),
                }
                for p, c, i, flag in zip(
                    self.grid_powers, self.grid_rates, self.pinned_indices, self.is_pareto
                )
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ParetoCloud:
        spec = ChannelSpec.from_dict(data=data["channel"])
        powers, rates = points_to_arrays(points=data["points"], n=spec.n)
        mask = np.array([bool(pt["is_pareto"]) for pt in data["points"]], dtype=bool)
        mask.setflags(write=False)
        return cls(
            spec=spec,
            grid_resolution=int(data["grid_resolution"]),
            grid_powers=powers,
            grid_rates=rates,
            is_pareto=mask,
            rate_tolerance=float(data["rate_tolerance"]),
        )


def grid_rate_tolerance(rates: np.ndarray, n: int, resolution: int) -> float:
    """``max(2, n - 1)`` times the largest rate change over one grid step."""
    if n == 0 or resolution < 2:
        return 0.0
    cube = rates.reshape((resolution,) * n + (n,))
    step = max(float(np.max(np.abs(np.diff(cube, axis=axis)))) for axis in range(n))
    return max(2, n - 1) * step


def pareto_grid(
    spec: ChannelSpec,
    grid_resolution: int | None = None,
    *,
    settings: Settings | None = None,
) -> ParetoCloud:
    """Evaluate the full power grid and keep its Pareto-maximal points.

    *grid_resolution* defaults to the settings' per-n oracle resolution.
    """
    settings = settings or Settings()
    if grid_resolution is None:
        resolution = settings.oracle_resolution_for(spec.n)
    else:
        resolution = grid_resolution
    if resolution < 2:
        msg = f"grid resolution must be >= 2, got {resolution}"
        raise ValueError(msg)
    check_budget(points=resolution**spec.n, budget=settings.point_budget, what="oracle grid")

    powers = power_grid(p_max=spec.p_max, resolution=resolution, dims=spec.n)
    rates = evaluate_rates(
        spec=spec,
        powers=powers,
        workers=settings.workers,
        chunk_size=settings.chunk_size,
    )
    mask = pareto_mask(rates=rates, powers=powers)
    tolerance = grid_rate_tolerance(rates=rates, n=spec.n, resolution=resolution)
    for arr in (powers, rates, mask):
        arr.setflags(write=False)

    cloud = ParetoCloud(
        spec=spec,
        grid_resolution=resolution,
        grid_powers=powers,
        grid_rates=rates,
        is_pareto=mask,
        rate_tolerance=tolerance,
    )
    logger.debug(
        "oracle: %d of %d grid points are Pareto-optimal (tol %.3g)",
        len(cloud), len(mask), tolerance,
    )
    return cloud


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of comparing an analytic frontier with the oracle.

    ``uncovered`` lists oracle Pareto points that no analytic point reaches
    within ``tol``; ``dominated`` lists analytic points that the oracle beats
    by more than ``tol`` in every coordinate.
    """

    tol: float
    uncovered: list[tuple[float, ...]] = field(default_factory=list)
    dominated: list[tuple[float, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.uncovered and not self.dominated

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "tol": self.tol,
            "uncovered_oracle_points": [list(p) for p in self.uncovered],
            "dominated_frontier_points": [list(p) for p in self.dominated],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        return cls(
            tol=float(data["tol"]),
            uncovered=[tuple(map(float, p)) for p in data["uncovered_oracle_points"]],
            dominated=[tuple(map(float, p)) for p in data["dominated_frontier_points"]],
        )


def _same_two_user(cloud: ChannelSpec, frontier: TwoUserFrontier) -> bool:
    if cloud.n != 2:
        return False
    mine = normalize(cloud)
    other = frontier.channel
    return all(
        math.isclose(getattr(mine, name), getattr(other, name), rel_tol=1e-12, abs_tol=0.0)
        for name in ("a", "b", "c", "d", "p_max")
    )


def _verify_two_user(cloud: ParetoCloud, frontier: TwoUserFrontier, tol: float) -> VerificationReport:
    hull = frontier.hull_array()
    oracle = cloud.rates

    heights = envelope_at(vertices=hull, x=np.maximum(oracle[:, 0] - tol, 0.0))
    uncovered = [tuple(map(float, p)) for p, h in zip(oracle, heights) if h < p[1] - tol]

    # The oracle may time-share too: compare against its own upper envelope.
    chain = oracle[upper_chain(points=oracle)]
    env = envelope_at(vertices=chain, x=hull[:, 0] + tol)
    dominated = [tuple(map(float, h)) for h, e in zip(hull, env) if e > h[1] + tol]
    return VerificationReport(tol=tol, uncovered=uncovered, dominated=dominated)


def _verify_pointwise(oracle: np.ndarray, analytic: np.ndarray, tol: float) -> VerificationReport:
    uncovered = [
        tuple(map(float, q))
        for q in oracle
        if not np.any(np.all(analytic >= q - tol, axis=1))
    ]
    dominated = [
        tuple(map(float, h))
        for h in analytic
        if np.any(np.all(oracle >= h + tol, axis=1))
    ]
    return VerificationReport(tol=tol, uncovered=uncovered, dominated=dominated)


def verify_frontier_dominance(
    cloud: ParetoCloud,
    frontier: TwoUserFrontier | NUserFrontier,
    tol: float | None = None,
) -> VerificationReport:
    """Two-sided comparison of an analytic frontier with the oracle cloud.

    *tol* defaults to the cloud's grid tolerance.  For two users the analytic
    hull is compared with the time-sharing envelope of the oracle points; for
    n users the Pareto subsets are compared point by point.
    """
    tol = cloud.rate_tolerance if tol is None else tol
    if tol < 0:
        msg = f"tol must be nonnegative, got {tol}"
        raise ValueError(msg)

    if isinstance(frontier, TwoUserFrontier):
        if not _same_two_user(cloud=cloud.spec, frontier=frontier):
            msg = "the oracle cloud and the two-user frontier use different channels"
            raise SpecMismatchError(msg)
        report = _verify_two_user(cloud=cloud, frontier=frontier, tol=tol)
    else:
        if frontier.spec != cloud.spec:
            msg = "the oracle cloud and the n-user frontier use different channels"
            raise SpecMismatchError(msg)
        analytic = frontier.all_rates[frontier.pareto_indices()]
        report = _verify_pointwise(oracle=cloud.rates, analytic=analytic, tol=tol)

    logger.debug(
        "verification (tol %.3g): %d uncovered, %d dominated",
        tol, len(report.uncovered), len(report.dominated),
    )
    return report


def pinned_power_violations(cloud: ParetoCloud, tol: float | None = None) -> list[int]:
    """Indices into ``cloud.powers`` of Pareto points with no transmitter at ``p_max``.

    A point off every pinned face is still accepted when some face point of
    the grid reaches it within *tol* in every coordinate (defaults to the
    grid tolerance; ``tol=0`` disables this).  Channels whose direct gains
    are all zero have no violations.
    """
    spec = cloud.spec
    if not np.any(np.diag(spec.gains) > 0):
        return []
    tol = cloud.rate_tolerance if tol is None else tol

    off_face = np.flatnonzero(np.max(cloud.powers, axis=1) < spec.p_max)
    if len(off_face) == 0:
        return []
    if tol == 0:
        return off_face.tolist()

    on_face = np.any(cloud.grid_powers == spec.p_max, axis=1)
    face_rates = cloud.grid_rates[on_face]
    rates = cloud.rates
    return [
        int(i)
        for i in off_face
        if not np.any(np.all(face_rates >= rates[i] - tol, axis=1))
    ]


def verify_pinned_power_property(cloud: ParetoCloud, tol: float | None = None) -> bool:
    """Whether every Pareto point of the cloud has a transmitter at full power."""
    violations = pinned_power_violations(cloud=cloud, tol=tol)
    if violations:
        logger.debug("%d Pareto points off every pinned face", len(violations))
    return not violations


def rate_collisions(cloud: ParetoCloud, tol: float = 1e-12) -> int:
    """Number of grid power tuples whose rate tuple repeats another within *tol*."""
    keys = np.round(cloud.grid_rates / tol).astype(np.int64)
    unique = np.unique(keys, axis=0)
    return int(len(keys) - len(unique))
