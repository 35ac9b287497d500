"""Tests for rateregion._export."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np
import pytest

from rateregion._curvature import curvature_report
from rateregion._export import (
    cloud_table,
    format_number,
    frontier2_table,
    rates_table,
    schedule_table,
    surface_table,
    write_csv,
    write_json,
)
from rateregion._frontier2 import two_user_frontier
from rateregion._nuser import n_user_frontier
from rateregion._oracle import pareto_grid
from rateregion._timeshare import build_schedule


def _read_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


class TestWriters:
    def test_format_number(self):
        assert format_number(value=1.0) == "1"
        assert format_number(value=1 / 3) == "0.333333333333"
        assert format_number(value=np.float64(2.5e-13)) == "2.5e-13"

    def test_csv_cells(self):
        out = io.StringIO()
        write_csv(stream=out, header=["x", "flag", "n", "maybe"], rows=[[0.5, True, np.int64(3), None]])
        assert out.getvalue() == "x,flag,n,maybe\n0.5,1,3,\n"

    def test_csv_header_only(self):
        out = io.StringIO()
        write_csv(stream=out, header=["a", "b"], rows=[])
        assert out.getvalue() == "a,b\n"

    def test_json_replaces_non_finite(self):
        out = io.StringIO()
        write_json(stream=out, payload={"q": math.inf, "r": np.float64(0.25), "v": np.array([1.0, np.nan])})
        assert json.loads(out.getvalue()) == {"q": None, "r": 0.25, "v": [1.0, None]}

    def test_json_is_deterministic(self, inflected):
        payload = curvature_report(ch=inflected).to_dict()
        first, second = io.StringIO(), io.StringIO()
        write_json(stream=first, payload=payload)
        write_json(stream=second, payload=payload)
        assert first.getvalue() == second.getvalue()
        assert first.getvalue().endswith("\n")


class TestTables:
    def test_rates_table(self):
        header, rows = rates_table(powers=np.array([[1.0, 0.5]]), rates=np.array([[0.3, 0.2]]))
        assert header == ["P_1", "P_2", "C_1", "C_2"]
        assert rows == [[1.0, 0.5, 0.3, 0.2]]

    def test_frontier2_table(self, inflected):
        frontier = two_user_frontier(ch=inflected, resolution=20)
        header, rows = frontier2_table(frontier=frontier)
        assert header == ["P1", "P2", "C1", "C2", "on_hull"]
        assert len(rows) == len(frontier.curve_rates)
        assert rows[0][4] is True
        assert rows[-1][4] is True
        assert sum(row[4] for row in rows) == len(frontier.hull_indices)

    def test_surface_table(self, three_user_unit):
        frontier = n_user_frontier(spec=three_user_unit, grid_resolution=2)
        header, rows = surface_table(frontier=frontier)
        assert header[-1] == "pinned_index"
        assert len(header) == 7
        assert [row[-1] for row in rows] == [1] * 4 + [2] * 4 + [3] * 4

    def test_cloud_table(self, unit_symmetric):
        cloud = pareto_grid(spec=unit_symmetric.to_spec(), grid_resolution=3)
        header, rows = cloud_table(cloud=cloud)
        assert header == ["P_1", "P_2", "C_1", "C_2", "pinned_index", "is_pareto"]
        assert len(rows) == 9
        # (0, 0) is off every face; (1, 0) is pinned on user 1.
        assert rows[0][4] == 0
        assert rows[6][4] == 1
        assert rows[6][5] is True

    def test_schedule_table(self, unit_symmetric):
        report = curvature_report(ch=unit_symmetric)
        frontier = two_user_frontier(ch=unit_symmetric, resolution=64)
        schedule = build_schedule(ch=unit_symmetric, report=report, frontier=frontier)
        header, rows = schedule_table(schedule=schedule)
        assert header == ["segment", "kind", "pinned_index", "P1", "P2", "C1", "C2"]
        assert [row[:3] for row in rows] == [[1, "line", None]] * 2 + [[2, "line", None]] * 2

    def test_csv_parses_back(self, inflected):
        header, rows = frontier2_table(frontier=two_user_frontier(ch=inflected, resolution=8))
        out = io.StringIO()
        write_csv(stream=out, header=header, rows=rows)
        parsed = _read_csv(out.getvalue())
        assert parsed[0] == header
        assert float(parsed[1][3]) == pytest.approx(4.0)
        assert parsed[1][4] == "1"
