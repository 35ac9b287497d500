"""Power grids over ``[0, p_max]`` and their (optionally parallel) evaluation."""

from __future__ import annotations

import logging
from functools import partial
from multiprocessing import Pool

import numpy as np

from rateregion._channel import ChannelSpec, rate_matrix

logger = logging.getLogger(__name__)


class BudgetExceededError(ValueError):
    """A requested grid would evaluate more power tuples than allowed."""


def check_budget(points: int, budget: int, *, what: str = "grid") -> None:
    if points > budget:
        msg = (
            f"{what} needs {points:,} power tuples, over the point budget of {budget:,}; "
            "lower the resolution or raise the budget"
        )
        raise BudgetExceededError(msg)
    logger.debug("%s: %d power tuples (budget %d)", what, points, budget)


def power_axis(p_max: float, resolution: int) -> np.ndarray:
    """``resolution`` evenly spaced powers from 0 to ``p_max`` inclusive."""
    if resolution < 2:
        msg = f"grid resolution must be >= 2, got {resolution}"
        raise ValueError(msg)
    axis = np.linspace(0.0, p_max, resolution)
    axis[-1] = p_max
    return axis


def power_grid(p_max: float, resolution: int, dims: int) -> np.ndarray:
    """All ``resolution ** dims`` power tuples, row-major (last axis fastest)."""
    if dims < 0:
        msg = f"dims must be nonnegative, got {dims}"
        raise ValueError(msg)
    if dims == 0:
        return np.empty((1, 0))
    axis = power_axis(p_max=p_max, resolution=resolution)
    mesh = np.meshgrid(*([axis] * dims), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def pinned_grid(p_max: float, resolution: int, n: int, pinned: int) -> np.ndarray:
    """Grid of ``n``-tuples with coordinate *pinned* (1-based) fixed at ``p_max``."""
    free = power_grid(p_max=p_max, resolution=resolution, dims=n - 1)
    return np.insert(free, pinned - 1, p_max, axis=1)


def _rate_chunk(spec: ChannelSpec, powers: np.ndarray) -> np.ndarray:
    return rate_matrix(spec=spec, powers=powers)


def evaluate_rates(
    spec: ChannelSpec,
    powers: np.ndarray,
    *,
    workers: int = 0,
    chunk_size: int = 65_536,
) -> np.ndarray:
    """Rates for every row of *powers*, in row order.

    ``workers=0`` evaluates in-process.  Otherwise the rows are split into
    chunks of at most *chunk_size* and mapped over a process pool; results
    are reassembled by chunk index so the output is identical either way.
    """
    powers = np.asarray(powers, dtype=float)
    if workers <= 0 or len(powers) <= chunk_size:
        return rate_matrix(spec=spec, powers=powers)

    bounds = range(0, len(powers), chunk_size)
    chunks = [powers[start : start + chunk_size] for start in bounds]
    logger.debug("evaluating %d chunks on %d workers", len(chunks), workers)
    with Pool(processes=workers) as pool:
        parts = pool.map(partial(_rate_chunk, spec), chunks)
    return np.vstack(parts)
