"""Tests for rateregion._settings."""

from __future__ import annotations

from pathlib import Path

import pytest

from rateregion._settings import BUDGET_ENV_VAR, Settings, load_settings

REPO_CONFIG = Path(__file__).resolve().parents[2] / "rateregion.toml"


class TestSettings:
    def test_defaults(self):
        s = Settings()
        assert s.frontier_resolution == 512
        assert s.point_budget == 2_000_000
        assert s.oracle_resolution_for(2) == 101
        assert s.oracle_resolution_for(3) == 26
        assert s.oracle_resolution_for(4) == 11
        assert s.oracle_resolution_for(7) == 6

    def test_frozen(self):
        with pytest.raises(AttributeError):
            Settings().workers = 4  # type: ignore[misc]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"frontier_resolution": 1},
            {"point_budget": 0},
            {"rate_tolerance": 0.0},
            {"curvature_step": -1e-4},
            {"curvature_zero": -1.0},
            {"workers": -1},
            {"chunk_size": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            Settings(**kwargs)

    def test_from_kwargs_ignores_unknown(self):
        s = Settings.from_kwargs(point_budget=10, colour="blue")
        assert s.point_budget == 10

    def test_merge_skips_none(self):
        s = Settings(workers=2).merge({"workers": None, "point_budget": 99, "unknown": 1})
        assert s.workers == 2
        assert s.point_budget == 99


class TestLoadSettings:
    def test_no_file_no_env(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert load_settings(environ={}) == Settings()

    def test_repo_config_matches_defaults(self):
        assert load_settings(config_path=REPO_CONFIG, environ={}) == Settings()

    def test_toml_values(self, tmp_path):
        path = tmp_path / "custom.toml"
        path.write_text(
            "[defaults]\nfrontier_resolution = 64\nworkers = 3\n"
            "[oracle.resolution]\n3 = 9\n",
            encoding="utf-8",
        )
        s = load_settings(config_path=path, environ={})
        assert s.frontier_resolution == 64
        assert s.workers == 3
        assert s.oracle_resolution_for(3) == 9
        assert s.oracle_resolution_for(2) == 6

    def test_toml_tolerances(self, tmp_path):
        path = tmp_path / "tolerances.toml"
        path.write_text(
            "[defaults]\nrate_tolerance = 1e-6\ncurvature_step = 1e-3\ncurvature_zero = 0.0\n",
            encoding="utf-8",
        )
        s = load_settings(config_path=path, environ={})
        assert (s.rate_tolerance, s.curvature_step, s.curvature_zero) == (1e-6, 1e-3, 0.0)

    def test_cwd_config_is_picked_up(self, tmp_path, monkeypatch):
        (tmp_path / "rateregion.toml").write_text("[defaults]\npoint_budget = 500\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        assert load_settings(environ={}).point_budget == 500

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_settings(config_path=tmp_path / "absent.toml", environ={})

    def test_env_budget_wins_over_file(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text("[defaults]\npoint_budget = 500\n", encoding="utf-8")
        s = load_settings(config_path=path, environ={BUDGET_ENV_VAR: "1234"})
        assert s.point_budget == 1234

    @pytest.mark.parametrize("raw", ["lots", "0", "-5"])
    def test_bad_env_budget(self, tmp_path, monkeypatch, raw):
        monkeypatch.chdir(tmp_path)
        with pytest.raises(ValueError, match=BUDGET_ENV_VAR):
            load_settings(environ={BUDGET_ENV_VAR: raw})

    def test_blank_env_budget_ignored(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert load_settings(environ={BUDGET_ENV_VAR: "  "}).point_budget == Settings().point_budget
