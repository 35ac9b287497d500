"""Command-line front end.

Reads a channel JSON document (or a named preset) and writes CSV or JSON to
stdout or ``--output``.  Exit status is 0 on success, 1 on invalid input,
configuration or budget errors, and 2 when ``oracle-verify`` finds
violations.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from rateregion._channel import ChannelError, ChannelSpec, normalize, rate_matrix
from rateregion._curvature import cross_check_curvature, curvature_report
from rateregion._export import (
    cloud_table,
    frontier2_table,
    rates_table,
    schedule_table,
    surface_table,
    write_csv,
    write_json,
)
from rateregion._frontier2 import two_user_frontier
from rateregion._grid import BudgetExceededError
from rateregion._nuser import n_user_frontier
from rateregion._oracle import (
    SpecMismatchError,
    pareto_grid,
    verify_frontier_dominance,
    verify_pinned_power_property,
)
from rateregion._presets import presets
from rateregion._settings import Settings, load_settings
from rateregion._timeshare import (
    ac_timeshare_condition,
    build_schedule,
    enumerate_candidates,
    symmetric_bstar,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFICATION_FAILED = 2

COMMANDS = ("rates", "frontier2", "classify", "timeshare", "frontiern", "oracle-verify")


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation.

    Exactly one of *input_path* (``'-'`` for stdin) and *preset* names the
    channel.  ``None`` fields fall back to :class:`Settings`.
    """

    command: str
    input_path: str | None = None
    preset: str | None = None
    resolution: int | None = None
    output_format: str = "json"
    output_path: str | None = None
    tol: float | None = None
    db_input: bool = False
    budget: int | None = None
    workers: int | None = None
    powers: tuple[float, ...] | None = None
    config_path: str | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            msg = f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}"
            raise ValueError(msg)
        if self.output_format not in ("csv", "json"):
            msg = f"output format must be 'csv' or 'json', got {self.output_format!r}"
            raise ValueError(msg)
        if self.resolution is not None and self.resolution < 2:
            msg = f"resolution must be >= 2, got {self.resolution}"
            raise ValueError(msg)
        if (self.input_path is None) == (self.preset is None):
            msg = "give exactly one of --input and --preset"
            raise ValueError(msg)
        if self.tol is not None and self.tol < 0:
            msg = f"tolerance must be nonnegative, got {self.tol}"
            raise ValueError(msg)


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------


def _read_channel(config: RunConfig) -> ChannelSpec:
    if config.preset is not None:
        return presets.spec(name=config.preset)

    if config.input_path == "-":
        text, source = sys.stdin.read(), "<stdin>"
    else:
        path = Path(config.input_path or "")
        text, source = path.read_text(encoding="utf-8"), str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        msg = f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        raise ChannelError(msg) from None
    return ChannelSpec.from_dict(data=data, db=config.db_input)


def _settings_for(config: RunConfig) -> Settings:
    settings = load_settings(config_path=config.config_path)
    return settings.merge({"point_budget": config.budget, "workers": config.workers})


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

# Each command returns (exit status, JSON payload, CSV header, CSV rows).
Result = tuple[int, dict[str, Any], list[str], list[list[Any]]]


def _cmd_rates(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    if config.powers is None:
        powers = np.full((1, spec.n), spec.p_max)
    else:
        if len(config.powers) != spec.n:
            msg = f"--powers has {len(config.powers)} entries, channel has n={spec.n}"
            raise ChannelError(msg)
        powers = np.asarray([config.powers], dtype=float)
    rates = rate_matrix(spec=spec, powers=powers)
    header, rows = rates_table(powers=powers, rates=rates)
    payload = {
        "channel": spec.to_dict(),
        "powers": powers[0].tolist(),
        "rates": rates[0].tolist(),
    }
    return EXIT_OK, payload, header, rows


def _cmd_frontier2(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    resolution = config.resolution or settings.frontier_resolution
    frontier = two_user_frontier(
        ch=normalize(spec=spec),
        resolution=resolution,
        rate_tolerance=settings.rate_tolerance,
    )
    header, rows = frontier2_table(frontier=frontier)
    return EXIT_OK, frontier.to_dict(), header, rows


def _cmd_classify(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    report = curvature_report(ch=normalize(spec=spec))
    check = cross_check_curvature(
        report=report,
        step=settings.curvature_step,
        zero=settings.curvature_zero,
    )
    payload = report.to_dict() | {"cross_check": check.to_dict()}
    rows = [
        [key, value]
        for key, value in payload.items()
        if key not in ("channel", "inflection_rate_points", "cross_check")
    ]
    rows.append(["cross_check_agreement", check.agreement])
    return EXIT_OK, payload, ["quantity", "value"], rows


def _cmd_timeshare(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    ch = normalize(spec=spec)
    resolution = config.resolution or settings.frontier_resolution
    report = curvature_report(ch=ch)
    frontier = two_user_frontier(ch=ch, resolution=resolution, rate_tolerance=settings.rate_tolerance)
    schedule = build_schedule(
        ch=ch,
        report=report,
        frontier=frontier,
        line_tolerance=settings.rate_tolerance if config.tol is None else config.tol,
    )
    candidates = enumerate_candidates(report=report, frontier=frontier)

    ac_condition = ac_timeshare_condition(ch=ch) if ch.a > 0 and ch.c > 0 else None
    b_star = symmetric_bstar(a=ch.a, p_max=ch.p_max) if ch.is_symmetric else None
    payload = {
        "schedule": schedule.to_dict(),
        "ac_timeshare_condition": ac_condition,
        "b_star": b_star,
        "curvature": report.to_dict(),
        "candidates": [c.to_dict() for c in candidates],
    }
    header, rows = schedule_table(schedule=schedule)
    return EXIT_OK, payload, header, rows


def _cmd_frontiern(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    resolution = config.resolution or settings.oracle_resolution_for(spec.n)
    frontier = n_user_frontier(spec=spec, grid_resolution=resolution, settings=settings)
    header, rows = surface_table(frontier=frontier)
    return EXIT_OK, frontier.to_dict(), header, rows


def _cmd_oracle_verify(config: RunConfig, spec: ChannelSpec, settings: Settings) -> Result:
    cloud = pareto_grid(spec=spec, grid_resolution=config.resolution, settings=settings)
    if spec.n == 2:
        frontier = two_user_frontier(
            ch=normalize(spec=spec),
            resolution=settings.frontier_resolution,
            rate_tolerance=settings.rate_tolerance,
        )
    else:
        frontier = n_user_frontier(spec=spec, grid_resolution=cloud.grid_resolution, settings=settings)
    report = verify_frontier_dominance(cloud=cloud, frontier=frontier, tol=config.tol)
    pinned = verify_pinned_power_property(cloud=cloud)

    payload = {
        "verification": report.to_dict(),
        "pinned_power_property": pinned,
        "oracle": cloud.to_dict(),
    }
    status = EXIT_OK if report.passed and pinned else EXIT_VERIFICATION_FAILED
    logger.info(
        "oracle-verify: %s (%d uncovered, %d dominated, pinned=%s)",
        "pass" if status == EXIT_OK else "FAIL",
        len(report.uncovered), len(report.dominated), pinned,
    )
    header, rows = cloud_table(cloud=cloud)
    return status, payload, header, rows


_HANDLERS = {
    "rates": _cmd_rates,
    "frontier2": _cmd_frontier2,
    "classify": _cmd_classify,
    "timeshare": _cmd_timeshare,
    "frontiern": _cmd_frontiern,
    "oracle-verify": _cmd_oracle_verify,
}


def _emit(config: RunConfig, stream: TextIO, payload: dict[str, Any], header: list[str], rows: list[list[Any]]) -> None:
    if config.output_format == "json":
        write_json(stream=stream, payload=payload)
    else:
        write_csv(stream=stream, header=header, rows=rows)


def run(config: RunConfig, *, stdout: TextIO | None = None) -> int:
    """Execute one command; returns the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        settings = _settings_for(config=config)
        spec = _read_channel(config=config)
        logger.info("%s: n=%d channel loaded", config.command, spec.n)
        status, payload, header, rows = _HANDLERS[config.command](config, spec, settings)
    except (ChannelError, BudgetExceededError, SpecMismatchError, ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"rateregion {config.command}: error: {message}", file=sys.stderr)
        return EXIT_INVALID

    if config.output_path is None:
        _emit(config=config, stream=stdout, payload=payload, header=header, rows=rows)
    else:
        with open(config.output_path, "w", encoding="utf-8", newline="") as f:
            _emit(config=config, stream=f, payload=payload, header=header, rows=rows)
        logger.info("wrote %s", config.output_path)
    return status


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _powers_arg(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        msg = f"expected comma-separated numbers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None


def build_parser() -> argparse.ArgumentParser:
    defaults = Settings()
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--input",
        "-i",
        dest="input_path",
        help="Channel JSON file, or '-' for stdin",
    )
    source.add_argument(
        "--preset",
        choices=presets.names(),
        help="Use a named two-user channel instead of --input",
    )
    common.add_argument(
        "--resolution",
        "-r",
        type=int,
        default=None,
        help=(
            f"Samples per frontier curve (default {defaults.frontier_resolution}) or grid "
            f"points per power axis (default {defaults.oracle_resolution} by n)"
        ),
    )
    common.add_argument(
        "--format",
        "-f",
        dest="output_format",
        choices=("csv", "json"),
        default="json",
        help="Output format (default: json)",
    )
    common.add_argument("--output", "-o", dest="output_path", help="Write to a file instead of stdout")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=(
            "oracle-verify: rate tolerance (default: grid-derived); "
            f"timeshare: chord detection tolerance (default {defaults.rate_tolerance}, the rate_tolerance setting)"
        ),
    )
    common.add_argument(
        "--db",
        dest="db_input",
        action="store_true",
        help="Read gains, noise power and p_max in dB",
    )
    common.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"Maximum power tuples per grid (default {defaults.point_budget:,}; env RATEREGION_BUDGET)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Process-pool size for grid evaluation (default: in-process)",
    )
    common.add_argument("--config", dest="config_path", help="Settings TOML file (default: ./rateregion.toml)")
    common.add_argument(
        "--verbose",
        "-v",
        action="count",
        default=0,
        help="Log progress to stderr (-vv for debug)",
    )

    parser = argparse.ArgumentParser(
        prog="rateregion",
        description="Rate regions, frontiers and time sharing for the Gaussian interference channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "rates": "Rates at one power vector (default: everyone at p_max)",
        "frontier2": "Two-user frontier curves F1, F2 and their hull",
        "classify": "Curvature classification of the two-user frontier",
        "timeshare": "Optimal time-sharing schedule of the two-user region",
        "frontiern": "Sampled pinned-power surfaces of the n-user frontier",
        "oracle-verify": "Check the analytic frontier against a brute-force grid",
    }
    for name in COMMANDS:
        cmd = sub.add_parser(name, parents=[common], help=descriptions[name], description=descriptions[name])
        if name == "rates":
            cmd.add_argument("--powers", type=_powers_arg, default=None, help="Comma-separated powers P_1,...,P_n")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID

    _configure_logging(verbosity=args.verbose)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input_path,
            preset=args.preset,
            resolution=args.resolution,
            output_format=args.output_format,
            output_path=args.output_path,
            tol=args.tol,
            db_input=args.db_input,
            budget=args.budget,
            workers=args.workers,
            powers=getattr(args, "powers", None),
            config_path=args.config_path,
        )
    except ValueError as exc:
        print(f"rateregion: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(config=config)


if __name__ == "__main__":
    sys.exit(main())
