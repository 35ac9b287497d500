"""Optimal time sharing on the two-user rate region.

The region frontier is the upper-right hull of F1 u F2.  Where that hull
follows a sampled curve the transmitters run a fixed power pair; where it
bridges a convex stretch with a chord, the two chord endpoints are used
alternately and the time fraction selects the point on the chord.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from rateregion._channel import ChannelError, NormalizedTwoUser, PowerVector, RatePoint
from rateregion._curvature import CurvatureReport, FrontierClass
from rateregion._frontier2 import TwoUserFrontier, points_to_arrays
from rateregion._hull import envelope_at

logger = logging.getLogger(__name__)

DEFAULT_LINE_TOLERANCE = 1e-9
DEFAULT_MATCH_TOLERANCE = 1e-6


# ---------------------------------------------------------------------------
# Closed-form conditions
# ---------------------------------------------------------------------------


def ac_timeshare_condition(ch: NormalizedTwoUser) -> bool:
    """Whether time sharing directly between A and C beats passing through B.

    Evaluates::

        (1 + cP)(1 + dP) / (1 + cP + dP) >= ((1 + aP + bP) / (1 + bP)) ** gamma

    with ``gamma = log2(1 + cP) / log2(1 + aP)``, which holds exactly when B
    lies on or below the chord A-C.
    """
    if ch.a == 0 or ch.c == 0:
        msg = f"the A-C condition needs a > 0 and c > 0, got a={ch.a}, c={ch.c}"
        raise ChannelError(msg)
    p = ch.p_max
    gamma = math.log2(1.0 + ch.c * p) / math.log2(1.0 + ch.a * p)
    lhs = (1.0 + ch.c * p) * (1.0 + ch.d * p) / (1.0 + ch.c * p + ch.d * p)
    rhs = ((1.0 + ch.a * p + ch.b * p) / (1.0 + ch.b * p)) ** gamma
    logger.debug("A-C condition: lhs=%g rhs=%g gamma=%g", lhs, rhs, gamma)
    return lhs >= rhs


def symmetric_bstar(a: float, p_max: float) -> float:
    """Cross-gain threshold ``sqrt(1 + a p_max) / p_max`` for symmetric channels.

    At or above it, one transmitter at full power at a time is optimal.
    """
    return math.sqrt(1.0 + a * p_max) / p_max


# ---------------------------------------------------------------------------
# Schedule types
# ---------------------------------------------------------------------------


class SegmentKind(enum.Enum):
    CURVE = "curve"
    LINE = "line"


@dataclass(frozen=True, eq=False)
class ScheduleSegment:
    """One piece of the time-sharing frontier, traversed in decreasing C1.

    A CURVE segment lists every hull vertex it passes through, all with the
    same transmitter (``pinned_index``, 1-based) at full power.  A LINE
    segment holds just its two endpoint operating states and names the
    enumerated chord candidate it coincides with, if any.
    """

    kind: SegmentKind
    powers: np.ndarray
    rates: np.ndarray
    pinned_index: int | None = None
    start_label: str | None = None
    end_label: str | None = None
    candidate: str | None = None

    @property
    def start(self) -> tuple[PowerVector, RatePoint]:
        return PowerVector(powers=self.powers[0]), RatePoint(rates=self.rates[0])

    @property
    def end(self) -> tuple[PowerVector, RatePoint]:
        return PowerVector(powers=self.powers[-1]), RatePoint(rates=self.rates[-1])

    @property
    def c1_interval(self) -> tuple[float, float]:
        lo, hi = float(self.rates[:, 0].min()), float(self.rates[:, 0].max())
        return lo, hi

    def _require_line(self) -> None:
        if self.kind is not SegmentKind.LINE:
            msg = "time fractions are only defined on LINE segments"
            raise ValueError(msg)

    def point_at(self, fraction: float) -> RatePoint:
        """Rate point reached by spending *fraction* of the time at the end state."""
        self._require_line()
        if not 0.0 <= fraction <= 1.0:
            msg = f"fraction must lie in [0, 1], got {fraction}"
            raise ValueError(msg)
        mixed = (1.0 - fraction) * self.rates[0] + fraction * self.rates[-1]
        return RatePoint(rates=np.maximum(mixed, 0.0))

    def fraction_for_c1(self, c1: float) -> float:
        """Time fraction at the end state that realises abscissa *c1*."""
        self._require_line()
        x0, x1 = float(self.rates[0, 0]), float(self.rates[-1, 0])
        lo, hi = min(x0, x1), max(x0, x1)
        if not lo <= c1 <= hi:
            msg = f"c1={c1} is outside the chord's range [{lo}, {hi}]"
            raise ValueError(msg)
        if x0 == x1:
            return 0.0
        return (c1 - x0) / (x1 - x0)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": self.kind.value,
            "start_label": self.start_label,
            "end_label": self.end_label,
            "c1_interval": list(self.c1_interval),
        }
        if self.kind is SegmentKind.CURVE:
            data["pinned_index"] = self.pinned_index
            data["points"] = [
                {"powers": p.tolist(), "rates": r.tolist()}
                for p, r in zip(self.powers, self.rates)
            ]
        else:
            data["start"] = {"powers": self.powers[0].tolist(), "rates": self.rates[0].tolist()}
            data["end"] = {"powers": self.powers[-1].tolist(), "rates": self.rates[-1].tolist()}
            data["candidate"] = self.candidate
            # rates(t) = (1 - t) * start.rates + t * end.rates, t = time at end
            data["time_fraction"] = {"start_weight": "1 - t", "end_weight": "t"}
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ScheduleSegment:
        kind = SegmentKind(data["kind"])
        if kind is SegmentKind.CURVE:
            powers, rates = points_to_arrays(points=data["points"], n=2)
            pinned_index = int(data["pinned_index"])
        else:
            powers, rates = points_to_arrays(points=[data["start"], data["end"]], n=2)
            pinned_index = None
        return cls(
            kind=kind,
            powers=powers,
            rates=rates,
            pinned_index=pinned_index,
            start_label=data.get("start_label"),
            end_label=data.get("end_label"),
            candidate=data.get("candidate"),
        )


@dataclass(frozen=True, eq=False)
class TimeShareSchedule:
    """Piecewise frontier from C (largest C1) to A (largest C2)."""

    channel: NormalizedTwoUser
    segments: tuple[ScheduleSegment, ...]
    description: tuple[str, ...] = field(default=())

    @property
    def lines(self) -> list[ScheduleSegment]:
        return [s for s in self.segments if s.kind is SegmentKind.LINE]

    @property
    def curves(self) -> list[ScheduleSegment]:
        return [s for s in self.segments if s.kind is SegmentKind.CURVE]

    @property
    def is_single_chord(self) -> bool:
        """True when the whole frontier is one chord from C to A."""
        return (
            len(self.segments) == 1
            and self.segments[0].kind is SegmentKind.LINE
            and self.segments[0].start_label == "C"
            and self.segments[0].end_label == "A"
        )

    def vertices(self) -> np.ndarray:
        """``(m, 2)`` array of the frontier's vertices, C first."""
        if not self.segments:
            return np.empty((0, 2))
        parts = [self.segments[0].rates]
        parts.extend(seg.rates[1:] for seg in self.segments[1:])
        return np.vstack(parts)

    def covers(self, point: RatePoint | np.ndarray, tol: float = 1e-9) -> bool:
        values = point.as_array() if isinstance(point, RatePoint) else np.asarray(point, dtype=float)
        c1, c2 = values
        height = envelope_at(vertices=self.vertices()[::-1], x=max(c1 - tol, 0.0))[0]
        return bool(height >= c2 - tol)

    def to_dict(self) -> dict[str, Any]:
        return {
            "channel": self.channel.to_dict(),
            "description": list(self.description),
            "segments": [seg.to_dict() for seg in self.segments],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TimeShareSchedule:
        return cls(
            channel=NormalizedTwoUser.from_dict(data=data["channel"]),
            segments=tuple(ScheduleSegment.from_dict(data=seg) for seg in data["segments"]),
            description=tuple(data["description"]),
        )


# ---------------------------------------------------------------------------
# Schedule construction
# ---------------------------------------------------------------------------


def _label_for(index: int, b_index: int, last_index: int) -> str:
    if index == 0:
        return "A"
    if index == b_index:
        return "B"
    if index == last_index:
        return "C"
    # Chord endpoint strictly inside F2 (E) or F1 (E1).
    return "E" if index < b_index else "E1"


def _edge_is_line(rates: np.ndarray, i: int, j: int, tol: float) -> bool:
    if j <= i + 1:
        return False
    x0, y0 = rates[i]
    x1, y1 = rates[j]
    inner = rates[i + 1 : j]
    if x1 == x0:
        return False
    chord = y0 + (inner[:, 0] - x0) * (y1 - y0) / (x1 - x0)
    return bool(np.max(chord - inner[:, 1]) > tol)


def _edges(frontier: TwoUserFrontier, tol: float) -> list[tuple[int, int, SegmentKind]]:
    """Hull edges in A-to-C order, CURVE edges split at B."""
    b_index = len(frontier.f2.rates) - 1
    hull = [int(i) for i in frontier.hull_indices]
    edges: list[tuple[int, int, SegmentKind]] = []
    for i, j in zip(hull, hull[1:]):
        if _edge_is_line(rates=frontier.curve_rates, i=i, j=j, tol=tol):
            edges.append((i, j, SegmentKind.LINE))
        elif i < b_index < j:
            edges.append((i, b_index, SegmentKind.CURVE))
            edges.append((b_index, j, SegmentKind.CURVE))
        else:
            edges.append((i, j, SegmentKind.CURVE))
    return edges


def _matching_candidate(
    candidates: list[ChordCandidate],
    start: np.ndarray,
    end: np.ndarray,
    tol: float,
) -> str | None:
    """Name of the first candidate whose endpoints are *start* and *end*, in either order."""

    def close(x: np.ndarray, y: np.ndarray) -> bool:
        return bool(np.allclose(x, y, rtol=0.0, atol=tol))

    for cand in candidates:
        first, second = cand.start.as_array(), cand.end.as_array()
        if (close(first, start) and close(second, end)) or (close(first, end) and close(second, start)):
            return cand.name
    return None


def build_schedule(
    ch: NormalizedTwoUser,
    report: CurvatureReport,
    frontier: TwoUserFrontier,
    *,
    line_tolerance: float = DEFAULT_LINE_TOLERANCE,
    match_tolerance: float = DEFAULT_MATCH_TOLERANCE,
) -> TimeShareSchedule:
    """Assemble the time-sharing frontier from the consolidated hull.

    Hull edges that skip sampled points lying more than *line_tolerance*
    below them become LINE segments; the rest are merged into CURVE
    segments per pinned transmitter.  The schedule runs from C to A.

    Each LINE segment is matched against :func:`enumerate_candidates`; the
    matching candidate's name is stored on the segment.
    """
    if report.channel != ch or frontier.channel != ch:
        msg = "curvature report and frontier were computed for a different channel"
        raise ChannelError(msg)

    candidates = enumerate_candidates(report=report, frontier=frontier, match_tolerance=match_tolerance)
    rates = frontier.curve_rates
    powers = frontier.curve_powers
    b_index = len(frontier.f2.rates) - 1
    last_index = len(rates) - 1

    def label(index: int) -> str:
        return _label_for(index=index, b_index=b_index, last_index=last_index)

    # Walk from C to A.
    segments: list[ScheduleSegment] = []
    pending: list[int] = []
    pending_pinned: int | None = None

    def flush() -> None:
        nonlocal pending, pending_pinned
        if len(pending) >= 2:
            idx = np.asarray(pending)
            segments.append(
                ScheduleSegment(
                    kind=SegmentKind.CURVE,
                    powers=powers[idx],
                    rates=rates[idx],
                    pinned_index=pending_pinned,
                    start_label=label(pending[0]),
                    end_label=label(pending[-1]),
                )
            )
        pending = []
        pending_pinned = None

    for i, j, kind in reversed(_edges(frontier=frontier, tol=line_tolerance)):
        if kind is SegmentKind.LINE:
            flush()
            idx = np.asarray([j, i])
            name = _matching_candidate(candidates=candidates, start=rates[j], end=rates[i], tol=match_tolerance)
            if name is None:
                logger.debug("chord %s-%s matches no enumerated candidate", label(j), label(i))
            segments.append(
                ScheduleSegment(
                    kind=SegmentKind.LINE,
                    powers=powers[idx],
                    rates=rates[idx],
                    start_label=label(j),
                    end_label=label(i),
                    candidate=name,
                )
            )
            continue
        pinned = 2 if j <= b_index else 1
        if pending and pending_pinned != pinned:
            flush()
        if not pending:
            pending = [j, i]
            pending_pinned = pinned
        else:
            pending.append(i)
    flush()

    description: list[str] = []
    for seg in segments:
        for tag in (seg.start_label, seg.end_label):
            if tag is not None and (not description or description[-1] != tag):
                description.append(tag)

    schedule = TimeShareSchedule(
        channel=ch,
        segments=tuple(segments),
        description=tuple(description),
    )
    logger.debug(
        "schedule %s: %d curve / %d line segments",
        "-".join(description), len(schedule.curves), len(schedule.lines),
    )
    return schedule


# ---------------------------------------------------------------------------
# Candidate enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChordCandidate:
    """A candidate time-sharing chord and how it compares with the hull.

    ``max_gap`` is the largest height by which the hull rises above the chord
    over the chord's C1 range (0 when the chord is part of the frontier).
    """

    name: str
    start: RatePoint
    end: RatePoint
    max_gap: float
    on_hull: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "start": list(self.start.rates),
            "end": list(self.end.rates),
            "max_gap": self.max_gap,
            "on_hull": self.on_hull,
        }


def _tangent_sample(origin: np.ndarray, samples: np.ndarray, *, from_left: bool) -> np.ndarray | None:
    """Sample reached by the highest chord from *origin* into *samples*."""
    dx = samples[:, 0] - origin[0]
    mask = dx > 0 if from_left else dx < 0
    if not np.any(mask):
        return None
    slopes = (samples[mask, 1] - origin[1]) / dx[mask]
    pick = int(np.argmax(slopes)) if from_left else int(np.argmin(slopes))
    return samples[mask][pick]


def _chord_gap(hull: np.ndarray, start: np.ndarray, end: np.ndarray, samples: int = 257) -> float:
    left, right = (start, end) if start[0] <= end[0] else (end, start)
    if right[0] == left[0]:
        top = float(envelope_at(vertices=hull, x=left[0])[0])
        return max(0.0, top - max(left[1], right[1]))
    xs = np.linspace(left[0], right[0], samples)
    chord = np.interp(xs, [left[0], right[0]], [left[1], right[1]])
    return max(0.0, float(np.max(envelope_at(vertices=hull, x=xs) - chord)))


def enumerate_candidates(
    report: CurvatureReport,
    frontier: TwoUserFrontier,
    *,
    match_tolerance: float = DEFAULT_MATCH_TOLERANCE,
) -> list[ChordCandidate]:
    """List the time-sharing chords worth comparing and grade each against the hull.

    Chords start at A (or at the F2 inflection point E when F2 is inflected)
    and end at B, at the F1 inflection point E1, at C or at the tangency point
    on F1 (T1); the mirrored set starts at C (or E1) and ends at B, E, A or
    the tangency point on F2 (T2).  The tangents from B into either curve
    close the list.
    """
    anchors = {name: point.as_array() for name, point in frontier.anchor_points.items()}
    if report.f2_class is FrontierClass.INFLECTION and (e := report.f2_inflection) is not None:
        anchors["E"] = e[1].as_array()
    if report.f1_class is FrontierClass.INFLECTION and (e1 := report.f1_inflection) is not None:
        anchors["E1"] = e1[1].as_array()

    f1_rates = np.asarray(frontier.f1.rates)
    f2_rates = np.asarray(frontier.f2.rates)
    hull = frontier.hull_array()

    pairs: list[tuple[str, np.ndarray, np.ndarray]] = []
    for origin in ("A", "E"):
        if origin not in anchors:
            continue
        o = anchors[origin]
        targets: list[tuple[str, np.ndarray | None]] = [
            ("B", anchors["B"]),
            ("E1", anchors.get("E1")),
            ("C", anchors["C"]),
            ("T1", _tangent_sample(origin=o, samples=f1_rates, from_left=True)),
        ]
        pairs.extend((f"{origin}-{name}", o, t) for name, t in targets if t is not None)
    for origin in ("C", "E1"):
        if origin not in anchors:
            continue
        o = anchors[origin]
        targets = [
            ("B", anchors["B"]),
            ("E", anchors.get("E")),
            ("A", anchors["A"]),
            ("T2", _tangent_sample(origin=o, samples=f2_rates, from_left=False)),
        ]
        pairs.extend((f"{origin}-{name}", o, t) for name, t in targets if t is not None)
    b = anchors["B"]
    for name, t in (
        ("T2", _tangent_sample(origin=b, samples=f2_rates, from_left=False)),
        ("T1", _tangent_sample(origin=b, samples=f1_rates, from_left=True)),
    ):
        if t is not None:
            pairs.append((f"B-{name}", b, t))

    seen: set[frozenset[str]] = set()
    candidates: list[ChordCandidate] = []
    for name, start, end in pairs:
        key = frozenset(name.split("-"))
        if key in seen or np.allclose(start, end):
            continue
        seen.add(key)
        gap = _chord_gap(hull=hull, start=start, end=end)
        candidates.append(
            ChordCandidate(
                name=name,
                start=RatePoint(rates=start),
                end=RatePoint(rates=end),
                max_gap=gap,
                on_hull=gap <= match_tolerance,
            )
        )
    logger.debug(
        "%d chord candidates, %d on the hull",
        len(candidates), sum(c.on_hull for c in candidates),
    )
    return candidates
