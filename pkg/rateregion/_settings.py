"""Tunable defaults, loaded from ``rateregion.toml`` and the environment.

Resolution order: built-in defaults, then the TOML file (if one is given or
found in the working directory), then ``RATEREGION_BUDGET``.  Command-line
flags are applied last by the caller through :meth:`Settings.merge`.
"""

from __future__ import annotations

import logging
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from collections.abc import Mapping
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "rateregion.toml"
BUDGET_ENV_VAR = "RATEREGION_BUDGET"

# Grid points per axis used by the oracle when n has no explicit entry.
_FALLBACK_ORACLE_RESOLUTION = 6


def _default_oracle_resolution() -> dict[int, int]:
    return {2: 101, 3: 26, 4: 11}


@dataclass(frozen=True)
class Settings:
    """Every numeric default the library and CLI rely on.

    Parameters
    ----------
    frontier_resolution:
        Samples per two-user frontier curve, uniform in C1.
    rate_tolerance:
        Absolute tolerance on rates (bits per channel use).  Sets the hull
        rounding of two-user frontiers and the default chord detection
        tolerance of time-sharing schedules.
    curvature_step:
        Finite-difference step ``h`` in C1 units for the curvature
        cross-check reported by ``classify``.
    curvature_zero:
        Second-derivative estimates with magnitude below this report sign 0.
    point_budget:
        Maximum number of power tuples evaluated by one grid operation.
    oracle_resolution:
        Grid points per power axis for the brute-force oracle, keyed by n.
    workers:
        Process-pool size for grid evaluation; ``0`` evaluates in-process.
    chunk_size:
        Power tuples per evaluation task.
    """

    frontier_resolution: int = 512
    rate_tolerance: float = 1e-9
    curvature_step: float = 1e-4
    curvature_zero: float = 1e-7
    point_budget: int = 2_000_000
    oracle_resolution: dict[int, int] = field(
        default_factory=_default_oracle_resolution,
    )
    workers: int = 0
    chunk_size: int = 65_536

    def __post_init__(self) -> None:
        if self.frontier_resolution < 2:
            msg = f"frontier_resolution must be >= 2, got {self.frontier_resolution}"
            raise ValueError(msg)
        if self.point_budget < 1:
            msg = f"point_budget must be positive, got {self.point_budget}"
            raise ValueError(msg)
        if self.rate_tolerance <= 0 or self.curvature_step <= 0:
            msg = "rate_tolerance and curvature_step must be positive"
            raise ValueError(msg)
        if self.curvature_zero < 0:
            msg = f"curvature_zero must be nonnegative, got {self.curvature_zero}"
            raise ValueError(msg)
        if self.workers < 0 or self.chunk_size < 1:
            msg = f"invalid pool settings: workers={self.workers}, chunk_size={self.chunk_size}"
            raise ValueError(msg)

    def oracle_resolution_for(self, n: int) -> int:
        """Default oracle grid resolution for an *n*-user channel."""
        return self.oracle_resolution.get(n, _FALLBACK_ORACLE_RESOLUTION)

    @classmethod
    def from_kwargs(cls, **kwargs: Any) -> Settings:
        """Create from arbitrary keyword arguments, ignoring unknown keys."""
        known = {f.name for f in fields(cls)}
        filtered = {k: v for k, v in kwargs.items() if k in known}
        return cls(**filtered)

    def merge(self, overrides: dict[str, Any]) -> Settings:
        """Return a new instance with non-None *overrides* applied on top."""
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        known = {f.name for f in fields(self.__class__)}
        for k, v in overrides.items():
            if k in known and v is not None:
                current[k] = v
        return Settings(**current)


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def _settings_from_toml(data: dict[str, Any]) -> dict[str, Any]:
    """Flatten the TOML layout into ``Settings`` keyword arguments."""
    values: dict[str, Any] = dict(data.get("defaults", {}))
    table = data.get("oracle", {}).get("resolution")
    if table:
        values["oracle_resolution"] = {
            int(n): int(resolution) for n, resolution in table.items()
        }
    return values


def _budget_from_env(environ: Mapping[str, str]) -> int | None:
    raw = environ.get(BUDGET_ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        budget = int(raw)
    except ValueError:
        msg = f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}"
        raise ValueError(msg) from None
    if budget < 1:
        msg = f"{BUDGET_ENV_VAR} must be positive, got {budget}"
        raise ValueError(msg)
    return budget


def load_settings(
    *,
    config_path: str | Path | None = None,
    environ: Mapping[str, str] | None = None,
) -> Settings:
    """Build ``Settings`` from an optional TOML file and the environment.

    When *config_path* is ``None`` a ``rateregion.toml`` in the current
    working directory is used if present.  An explicit path that does not
    exist raises ``FileNotFoundError``.
    """
    values: dict[str, Any] = {}

    path = Path(config_path) if config_path is not None else Path.cwd() / CONFIG_FILENAME
    if config_path is not None or path.is_file():
        with open(path, "rb") as f:
            values.update(_settings_from_toml(data=tomllib.load(f)))
        logger.debug("loaded settings from %s", path)

    budget = _budget_from_env(environ=os.environ if environ is None else environ)
    if budget is not None:
        values["point_budget"] = budget
        logger.debug("point budget overridden from %s: %d", BUDGET_ENV_VAR, budget)

    return Settings.from_kwargs(**values)
