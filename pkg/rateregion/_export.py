"""CSV and JSON emitters for frontiers, surfaces, oracle clouds and schedules.

CSV numbers use 12 significant digits with '.' as decimal separator; a
header row is always written.  JSON output is indented and deterministic.
"""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable, Sequence
from typing import Any, TextIO

import numpy as np

from rateregion._frontier2 import TwoUserFrontier
from rateregion._nuser import NUserFrontier
from rateregion._oracle import ParetoCloud
from rateregion._timeshare import SegmentKind, TimeShareSchedule


def format_number(value: float) -> str:
    return format(float(value), ".12g")


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return "" if value is None else str(value)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def _json_safe(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return _json_safe(value.tolist())
    if isinstance(value, (np.floating, float)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def write_json(stream: TextIO, payload: dict[str, Any]) -> None:
    """Write *payload* as indented JSON; non-finite floats become ``null``."""
    json.dump(_json_safe(payload), stream, indent=2, allow_nan=False)
    stream.write("\n")


def _columns(prefix: str, n: int) -> list[str]:
    return [f"{prefix}_{i}" for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def rates_table(powers: np.ndarray, rates: np.ndarray) -> tuple[list[str], list[list[Any]]]:
    n = powers.shape[1]
    header = _columns("P", n) + _columns("C", n)
    rows = [list(p) + list(c) for p, c in zip(powers, rates)]
    return header, rows


def frontier2_table(frontier: TwoUserFrontier) -> tuple[list[str], list[list[Any]]]:
    """The sampled F2 u F1 polyline from A to C with a hull-membership flag."""
    on_hull = np.zeros(len(frontier.curve_rates), dtype=bool)
    on_hull[frontier.hull_indices] = True
    header = ["P1", "P2", "C1", "C2", "on_hull"]
    rows = [
        [p[0], p[1], c[0], c[1], bool(flag)]
        for p, c, flag in zip(frontier.curve_powers, frontier.curve_rates, on_hull)
    ]
    return header, rows


def surface_table(frontier: NUserFrontier) -> tuple[list[str], list[list[Any]]]:
    n = frontier.spec.n
    header = _columns("P", n) + _columns("C", n) + ["pinned_index"]
    rows = [
        list(p) + list(c) + [int(i)]
        for p, c, i in zip(frontier.all_powers, frontier.all_rates, frontier.provenance)
    ]
    return header, rows


def cloud_table(cloud: ParetoCloud) -> tuple[list[str], list[list[Any]]]:
    """Every grid point; ``pinned_index`` is the first transmitter at ``p_max`` (0 if none)."""
    n = cloud.spec.n
    header = _columns("P", n) + _columns("C", n) + ["pinned_index", "is_pareto"]
    rows = [
        list(p) + list(c) + [int(i), bool(flag)]
        for p, c, i, flag in zip(cloud.grid_powers, cloud.grid_rates, cloud.pinned_indices, cloud.is_pareto)
    ]
    return header, rows


def schedule_table(schedule: TimeShareSchedule) -> tuple[list[str], list[list[Any]]]:
    header = ["segment", "kind", "pinned_index", "P1", "P2", "C1", "C2"]
    rows: list[list[Any]] = []
    for number, seg in enumerate(schedule.segments, start=1):
        pinned = seg.pinned_index if seg.kind is SegmentKind.CURVE else None
        for p, c in zip(seg.powers, seg.rates):
            rows.append([number, seg.kind.value, pinned, p[0], p[1], c[0], c[1]])
    return header, rows
