"""Two-user frontier curves F1, F2 and their consolidated convex hull.

For a target rate ``C1 = r`` the power of transmitter 1 is tied to the power
of transmitter 2, and the best achievable ``C2`` is increasing in ``P2``.
Hence the frontier is traced with one transmitter at full power:

- F2 (``P2 = p_max``) for ``0 <= c1 <= C1(p_max, p_max)``, from A to B;
- F1 (``P1 = p_max``) for ``C1(p_max, p_max) <= c1 <= C1(p_max, 0)``,
  from B to C;

and the region frontier is the upper convex hull of ``F1 u F2``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from rateregion._channel import ChannelError, NormalizedTwoUser, PowerVector, RatePoint
from rateregion._hull import decimals_for_tolerance, envelope_at, upper_chain

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)

ANCHOR_NAMES = ("A", "B", "C")
DEFAULT_RATE_TOLERANCE = 1e-9


def points_to_arrays(points: list[dict[str, Any]], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Read-only ``(m, n)`` power and rate arrays from ``{"powers", "rates"}`` records."""
    powers = np.array([pt["powers"] for pt in points], dtype=float).reshape(-1, n)
    rates = np.array([pt["rates"] for pt in points], dtype=float).reshape(-1, n)
    powers.setflags(write=False)
    rates.setflags(write=False)
    return powers, rates


def _scalar_or_array(value: np.ndarray) -> float | np.ndarray:
    return float(value) if np.ndim(value) == 0 else value


def _exp2m1(r: np.ndarray | float) -> np.ndarray:
    """``2**r - 1`` without cancellation for small r."""
    return np.expm1(np.asarray(r, dtype=float) * _LN2)


def two_user_rates(
    ch: NormalizedTwoUser,
    p1: np.ndarray | float,
    p2: np.ndarray | float,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``(C1, C2)`` for power arrays *p1*, *p2*."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    c1 = np.log1p(ch.a * p1 / (1.0 + ch.b * p2)) / _LN2
    c2 = np.log1p(ch.c * p2 / (1.0 + ch.d * p1)) / _LN2
    return c1, c2


# ---------------------------------------------------------------------------
# Constant-rate locus
# ---------------------------------------------------------------------------


def p1_for_target_rate(
    ch: NormalizedTwoUser,
    r: np.ndarray | float,
    p2: np.ndarray | float,
) -> float | np.ndarray:
    """Power ``P1`` giving ``C1 = r`` when transmitter 2 uses *p2*.

    The result may exceed ``p_max``; feasibility is the caller's concern.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        msg = "target rate must be nonnegative"
        raise ChannelError(msg)
    if ch.a == 0:
        if np.any(r_arr > 0):
            msg = "a = 0: no power of transmitter 1 reaches a positive rate"
            raise ChannelError(msg)
        return _scalar_or_array(np.zeros(np.broadcast(r_arr, np.asarray(p2)).shape))
    p1 = (1.0 + ch.b * np.asarray(p2, dtype=float)) * _exp2m1(r_arr) / ch.a
    return _scalar_or_array(p1)


def c2_given_p2(
    ch: NormalizedTwoUser,
    r: np.ndarray | float,
    p2: np.ndarray | float,
) -> float | np.ndarray:
    """Rate ``C2`` along the locus ``C1 = r`` as a function of ``P2``.

    Strictly increasing in *p2* whenever ``a > 0`` and ``c > 0``.
    """
    if ch.a == 0:
        msg = "a = 0: the constant-C1 locus is undefined"
        raise ChannelError(msg)
    p2_arr = np.asarray(p2, dtype=float)
    if np.any(p2_arr < 0):
        msg = "p2 must be nonnegative"
        raise ChannelError(msg)
    excess = _exp2m1(r)
    denom = 1.0 + (ch.d / ch.a) * (1.0 + ch.b * p2_arr) * excess
    return _scalar_or_array(np.log1p(ch.c * p2_arr / denom) / _LN2)


def locus_sinr_derivative(
    ch: NormalizedTwoUser,
    r: np.ndarray | float,
    p2: np.ndarray | float,
) -> float | np.ndarray:
    """Closed-form derivative of the SINR of user 2 along ``C1 = r``.

    ``ac (a + d (2^r - 1)) / (a + d (1 + b p2)(2^r - 1))**2``; positive for
    ``a, c > 0``, which makes :func:`c2_given_p2` increasing.
    """
    excess = _exp2m1(r)
    p2_arr = np.asarray(p2, dtype=float)
    num = ch.a * ch.c * (ch.a + ch.d * excess)
    den = (ch.a + ch.d * (1.0 + ch.b * p2_arr) * excess) ** 2
    return _scalar_or_array(num / den)


# ---------------------------------------------------------------------------
# Frontier samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FrontierSample:
    """A sampled potential line with one transmitter pinned at ``p_max``.

    Parameters
    ----------
    pinned_index:
        1-based index of the transmitter held at full power (the i of F_i).
    powers:
        ``(m, 2)`` array of power pairs along the line.
    rates:
        ``(m, 2)`` array of the corresponding rate pairs.
    sweep_resolution:
        Number of samples ``m``.
    """

    pinned_index: int
    powers: np.ndarray
    rates: np.ndarray
    sweep_resolution: int

    @property
    def points(self) -> list[tuple[PowerVector, RatePoint]]:
        return [
            (PowerVector(powers=p), RatePoint(rates=c))
            for p, c in zip(self.powers, self.rates)
        ]

    @property
    def endpoints(self) -> tuple[RatePoint, RatePoint]:
        return RatePoint(rates=self.rates[0]), RatePoint(rates=self.rates[-1])

    def to_dict(self) -> dict[str, Any]:
        return {
            "pinned_index": self.pinned_index,
            "sweep_resolution": self.sweep_resolution,
            "points": [
                {"powers": p.tolist(), "rates": c.tolist()}
                for p, c in zip(self.powers, self.rates)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FrontierSample:
        powers, rates = points_to_arrays(points=data["points"], n=2)
        return cls(
            pinned_index=int(data["pinned_index"]),
            powers=powers,
            rates=rates,
            sweep_resolution=int(data["sweep_resolution"]),
        )


def _sample(
    ch: NormalizedTwoUser,
    pinned_index: int,
    p1: np.ndarray,
    p2: np.ndarray,
) -> FrontierSample:
    c1, c2 = two_user_rates(ch=ch, p1=p1, p2=p2)
    powers = np.column_stack((p1, p2))
    rates = np.column_stack((c1, c2))
    powers.setflags(write=False)
    rates.setflags(write=False)
    return FrontierSample(
        pinned_index=pinned_index,
        powers=powers,
        rates=rates,
        sweep_resolution=len(p1),
    )


def _check_resolution(resolution: int) -> None:
    if resolution < 2:
        msg = f"resolution must be >= 2, got {resolution}"
        raise ValueError(msg)


def frontier_f2(ch: NormalizedTwoUser, resolution: int) -> FrontierSample:
    """Sample F2 = Phi(:, p_max) uniformly in c1 over ``[0, C1(p_max, p_max)]``.

    Endpoints are A (``c1 = 0``) and B.  With ``a = 0`` the line collapses
    onto the C2 axis and is swept in ``P1`` instead.
    """
    _check_resolution(resolution=resolution)
    p_max = ch.p_max

    if ch.a == 0:
        p1 = np.linspace(0.0, p_max, resolution)
    else:
        c1_b, _ = ch.rates(p1=p_max, p2=p_max)
        c1 = np.linspace(0.0, c1_b, resolution)
        p1 = np.minimum(
            p1_for_target_rate(ch=ch, r=c1, p2=p_max),
            p_max,
        )
        p1[0] = 0.0
        p1[-1] = p_max
    p2 = np.full(resolution, p_max)
    return _sample(ch=ch, pinned_index=2, p1=p1, p2=p2)


def frontier_f1(ch: NormalizedTwoUser, resolution: int) -> FrontierSample:
    """Sample F1 = Phi(p_max, :) uniformly in c1 over ``[C1(B), C1(C)]``.

    Endpoints are B and C, where ``P2`` is exactly 0.  When ``b = 0`` (or
    ``a = 0``) C1 does not depend on ``P2``, so ``P2`` is swept directly from
    ``p_max`` down to 0.
    """
    _check_resolution(resolution=resolution)
    p_max = ch.p_max

    if ch.a == 0 or ch.b == 0:
        p2 = np.linspace(p_max, 0.0, resolution)
    else:
        c1_b, _ = ch.rates(p1=p_max, p2=p_max)
        c1_c, _ = ch.rates(p1=p_max, p2=0.0)
        c1 = np.linspace(c1_b, c1_c, resolution)
        p2 = (ch.a * p_max / _exp2m1(c1) - 1.0) / ch.b
        p2 = np.clip(p2, 0.0, p_max)
        p2[0] = p_max
        p2[-1] = 0.0
    p1 = np.full(resolution, p_max)
    return _sample(ch=ch, pinned_index=1, p1=p1, p2=p2)


# ---------------------------------------------------------------------------
# Consolidated frontier
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoUserFrontier:
    """Both frontier curves and the upper-right hull of their union.

    ``curve_*`` arrays hold the union polyline A -> B -> C (F2 then F1, the
    shared point B stored once); ``hull_indices`` index into it and are
    ordered from A to C.  ``rate_tolerance`` sets the rounding applied before
    hull orientation tests and the default slack of :meth:`covers`.
    """

    channel: NormalizedTwoUser
    f1: FrontierSample
    f2: FrontierSample
    curve_powers: np.ndarray
    curve_rates: np.ndarray
    curve_pinned: np.ndarray
    hull_indices: np.ndarray
    anchor_points: dict[str, RatePoint]
    rate_tolerance: float = DEFAULT_RATE_TOLERANCE

    @property
    def hull(self) -> list[RatePoint]:
        return [RatePoint(rates=self.curve_rates[i]) for i in self.hull_indices]

    @property
    def hull_powers(self) -> list[PowerVector]:
        return [PowerVector(powers=self.curve_powers[i]) for i in self.hull_indices]

    def hull_array(self) -> np.ndarray:
        return np.asarray(self.curve_rates[self.hull_indices], dtype=float)

    def covers(self, point: RatePoint | np.ndarray, tol: float | None = None) -> bool:
        """Whether *point* lies on or below the hull within *tol*."""
        tol = self.rate_tolerance if tol is None else tol
        values = point.as_array() if isinstance(point, RatePoint) else np.asarray(point, dtype=float)
        c1, c2 = values
        height = envelope_at(vertices=self.hull_array(), x=max(c1 - tol, 0.0))[0]
        return bool(height >= c2 - tol)

    def to_dict(self) -> dict[str, Any]:
        return {
            "channel": self.channel.to_dict(),
            "rate_tolerance": self.rate_tolerance,
            "anchor_points": {
                name: list(point.rates) for name, point in self.anchor_points.items()
            },
            "f1": self.f1.to_dict(),
            "f2": self.f2.to_dict(),
            "hull_indices": self.hull_indices.tolist(),
            "hull": [
                {"powers": self.curve_powers[i].tolist(), "rates": self.curve_rates[i].tolist()}
                for i in self.hull_indices
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TwoUserFrontier:
        """Rebuild from :meth:`to_dict` output; ``hull`` is derived and ignored."""
        f2 = FrontierSample.from_dict(data=data["f2"])
        f1 = FrontierSample.from_dict(data=data["f1"])
        hull_indices = np.asarray(data["hull_indices"], dtype=int)
        return _assemble(
            ch=NormalizedTwoUser.from_dict(data=data["channel"]),
            f2=f2,
            f1=f1,
            hull_indices=hull_indices,
            anchors={name: RatePoint(rates=data["anchor_points"][name]) for name in ANCHOR_NAMES},
            rate_tolerance=float(data.get("rate_tolerance", DEFAULT_RATE_TOLERANCE)),
        )


def anchor_points(ch: NormalizedTwoUser) -> dict[str, RatePoint]:
    """The corner operating points A = (0, p_max), B = (p_max, p_max), C = (p_max, 0)."""
    p = ch.p_max
    return {
        "A": RatePoint(rates=ch.rates(p1=0.0, p2=p)),
        "B": RatePoint(rates=ch.rates(p1=p, p2=p)),
        "C": RatePoint(rates=ch.rates(p1=p, p2=0.0)),
    }


def _union(f2: FrontierSample, f1: FrontierSample) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    curve_powers = np.vstack((f2.powers, f1.powers[1:]))
    curve_rates = np.vstack((f2.rates, f1.rates[1:]))
    curve_pinned = np.concatenate((
        np.full(len(f2.rates), 2),
        np.full(len(f1.rates) - 1, 1),
    ))
    return curve_powers, curve_rates, curve_pinned


def _assemble(
    ch: NormalizedTwoUser,
    f2: FrontierSample,
    f1: FrontierSample,
    hull_indices: np.ndarray,
    anchors: dict[str, RatePoint],
    rate_tolerance: float,
) -> TwoUserFrontier:
    curve_powers, curve_rates, curve_pinned = _union(f2=f2, f1=f1)
    for arr in (curve_powers, curve_rates, curve_pinned, hull_indices):
        arr.setflags(write=False)
    return TwoUserFrontier(
        channel=ch,
        f1=f1,
        f2=f2,
        curve_powers=curve_powers,
        curve_rates=curve_rates,
        curve_pinned=curve_pinned,
        hull_indices=hull_indices,
        anchor_points=anchors,
        rate_tolerance=rate_tolerance,
    )


def two_user_frontier(
    ch: NormalizedTwoUser,
    resolution: int,
    *,
    rate_tolerance: float = DEFAULT_RATE_TOLERANCE,
) -> TwoUserFrontier:
    """Sample F1 and F2 and build the upper-right hull of their union.

    Rates are rounded to the precision of *rate_tolerance* before the hull's
    orientation tests, so samples within it of a chord never become vertices.
    """
    f2 = frontier_f2(ch=ch, resolution=resolution)
    f1 = frontier_f1(ch=ch, resolution=resolution)

    _, curve_rates, _ = _union(f2=f2, f1=f1)
    hull_indices = upper_chain(points=curve_rates, decimals=decimals_for_tolerance(tol=rate_tolerance))
    logger.debug(
        "two-user hull: %d vertices from %d samples",
        len(hull_indices),
        len(curve_rates),
    )
    return _assemble(
        ch=ch,
        f2=f2,
        f1=f1,
        hull_indices=hull_indices,
        anchors=anchor_points(ch=ch),
        rate_tolerance=rate_tolerance,
    )
