"""Convexity, concavity and inflection of the two-user frontier curves.

Along F2 the power of transmitter 1 follows
``P1 = (1 + b p_max)(2^c1 - 1) / a`` and the curvature satisfies::

    sign(d2 F2 / d c1^2) = sign((theta + a d P1)^2 - (a - theta)(a - theta + a c p_max))
                         = sign(P1 - q1)

with ``theta = d + d b p_max``.  F1 mirrors this with the user roles
exchanged (``beta = b + b d p_max`` and ``q2`` in terms of ``P2``).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from rateregion._channel import NormalizedTwoUser, PowerVector, RatePoint
from rateregion._frontier2 import c2_given_p2, p1_for_target_rate

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-4
DEFAULT_ZERO = 1e-7


class FrontierClass(enum.Enum):
    """Shape of a frontier curve between its end points."""

    CONVEX_FRONTIER = "convex"
    CONCAVE_FRONTIER = "concave"
    INFLECTION = "inflection"


def _inflection_power(
    own: float,
    other: float,
    cross: float,
    shift: float,
    p_max: float,
) -> float:
    """``(Re sqrt((own - shift)(own - shift + own other p_max)) - shift) / (own cross)``.

    A vanishing denominator returns ``inf``: the curve is concave throughout.
    """
    denom = own * cross
    if denom == 0:
        return math.inf
    radicand = (own - shift) * (own - shift + own * other * p_max)
    root = math.sqrt(radicand) if radicand > 0 else 0.0
    return (root - shift) / denom


def classify(q: float, p_max: float) -> FrontierClass:
    if q <= 0:
        return FrontierClass.CONVEX_FRONTIER
    if q >= p_max:
        return FrontierClass.CONCAVE_FRONTIER
    return FrontierClass.INFLECTION


@dataclass(frozen=True)
class CurvatureReport:
    """Closed-form curvature quantities and the resulting classification.

    ``q1`` locates the inflection of F2 in ``P1``; ``q2`` that of F1 in ``P2``.
    Both are finite except when the closed form's denominator vanishes
    (``a d = 0`` for q1, ``c b = 0`` for q2).  That curve has no inflection,
    so q is ``inf``, the class is CONCAVE_FRONTIER and JSON carries ``null``.
    """

    channel: NormalizedTwoUser
    theta: float
    beta: float
    q1: float
    q2: float
    f2_class: FrontierClass
    f1_class: FrontierClass

    @property
    def f2_inflection(self) -> tuple[PowerVector, RatePoint] | None:
        """Operating point E = Phi(q1, p_max) when F2 is inflected."""
        if self.f2_class is not FrontierClass.INFLECTION:
            return None
        p_max = self.channel.p_max
        return (
            PowerVector(powers=(self.q1, p_max)),
            RatePoint(rates=self.channel.rates(p1=self.q1, p2=p_max)),
        )

    @property
    def f1_inflection(self) -> tuple[PowerVector, RatePoint] | None:
        """Operating point Phi(p_max, q2) when F1 is inflected."""
        if self.f1_class is not FrontierClass.INFLECTION:
            return None
        p_max = self.channel.p_max
        return (
            PowerVector(powers=(p_max, self.q2)),
            RatePoint(rates=self.channel.rates(p1=p_max, p2=self.q2)),
        )

    @property
    def inflection_rate_points(self) -> dict[str, RatePoint]:
        points: dict[str, RatePoint] = {}
        if (e := self.f2_inflection) is not None:
            points["E"] = e[1]
        if (e1 := self.f1_inflection) is not None:
            points["E1"] = e1[1]
        return points

    def to_dict(self) -> dict[str, Any]:
        def finite(x: float) -> float | None:
            return x if math.isfinite(x) else None

        return {
            "channel": self.channel.to_dict(),
            "theta": self.theta,
            "beta": self.beta,
            "q1": finite(self.q1),
            "q2": finite(self.q2),
            "f2_class": self.f2_class.value,
            "f1_class": self.f1_class.value,
            "inflection_rate_points": {
                name: list(point.rates)
                for name, point in self.inflection_rate_points.items()
            },
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CurvatureReport:
        """Rebuild from :meth:`to_dict` output; derived keys are ignored."""

        def q(value: float | None) -> float:
            return math.inf if value is None else float(value)

        return cls(
            channel=NormalizedTwoUser.from_dict(data=data["channel"]),
            theta=float(data["theta"]),
            beta=float(data["beta"]),
            q1=q(data["q1"]),
            q2=q(data["q2"]),
            f2_class=FrontierClass(data["f2_class"]),
            f1_class=FrontierClass(data["f1_class"]),
        )


def curvature_report(ch: NormalizedTwoUser) -> CurvatureReport:
    """Compute theta, beta, q1, q2 and classify both frontier curves."""
    p_max = ch.p_max
    theta = ch.d + ch.d * ch.b * p_max
    beta = ch.b + ch.b * ch.d * p_max
    q1 = _inflection_power(own=ch.a, other=ch.c, cross=ch.d, shift=theta, p_max=p_max)
    q2 = _inflection_power(own=ch.c, other=ch.a, cross=ch.b, shift=beta, p_max=p_max)
    report = CurvatureReport(
        channel=ch,
        theta=theta,
        beta=beta,
        q1=q1,
        q2=q2,
        f2_class=classify(q=q1, p_max=p_max),
        f1_class=classify(q=q2, p_max=p_max),
    )
    logger.debug(
        "curvature: q1=%g (%s) q2=%g (%s)",
        q1, report.f2_class.value, q2, report.f1_class.value,
    )
    return report


def f2_curvature_sign(ch: NormalizedTwoUser, p1: float) -> int:
    """Sign of ``(theta + a d P1)^2 - (a - theta)(a - theta + a c p_max)``."""
    theta = ch.d + ch.d * ch.b * ch.p_max
    value = (theta + ch.a * ch.d * p1) ** 2 - (ch.a - theta) * (
        ch.a - theta + ch.a * ch.c * ch.p_max
    )
    return int(np.sign(value))


def f1_curvature_sign(ch: NormalizedTwoUser, p2: float) -> int:
    """F1 counterpart of :func:`f2_curvature_sign`, in terms of ``P2`` and Q2."""
    return f2_curvature_sign(ch=ch.swapped(), p1=p2)


# ---------------------------------------------------------------------------
# Numerical cross-check
# ---------------------------------------------------------------------------


def f2_power_at(ch: NormalizedTwoUser, c1: float) -> float:
    """Power of transmitter 1 at abscissa *c1* on F2."""
    return float(p1_for_target_rate(ch=ch, r=c1, p2=ch.p_max))


def second_difference_sign(
    ch: NormalizedTwoUser,
    c1: float,
    h: float = DEFAULT_STEP,
    *,
    zero: float = DEFAULT_ZERO,
    pinned_index: int = 2,
) -> int:
    """Sign of the central second difference of a frontier curve at *c1*.

    With ``pinned_index=2`` the curve is F2 as a function of C1.  With
    ``pinned_index=1`` it is F1 as a function of C2 and *c1* is read as the
    C2 abscissa.  Estimates within ``zero`` of 0, or within the rounding
    noise of the three evaluations, report 0.
    """
    if pinned_index not in (1, 2):
        msg = f"pinned_index must be 1 or 2, got {pinned_index}"
        raise ValueError(msg)
    curve = ch if pinned_index == 2 else ch.swapped()
    if curve.a == 0:
        msg = "the curve is degenerate when its abscissa user has no direct gain"
        raise ValueError(msg)
    if h <= 0:
        msg = f"h must be positive, got {h}"
        raise ValueError(msg)

    upper, _ = curve.rates(p1=curve.p_max, p2=curve.p_max)
    if c1 - h < 0 or c1 + h > upper:
        msg = f"c1={c1} is within h={h} of the domain boundary [0, {upper}]"
        raise ValueError(msg)

    f = np.asarray(
        c2_given_p2(ch=curve, r=np.array([c1 - h, c1, c1 + h]), p2=curve.p_max),
        dtype=float,
    )
    second = (f[0] - 2.0 * f[1] + f[2]) / (h * h)
    noise = 8.0 * np.finfo(float).eps * (abs(f[0]) + 2.0 * abs(f[1]) + abs(f[2])) / (h * h)
    if abs(second) <= max(zero, noise):
        return 0
    return 1 if second > 0 else -1


@dataclass(frozen=True)
class CurvatureCrossCheck:
    """Agreement of the closed-form curvature sign with second differences.

    Only samples where the numerical estimate is nonzero are counted.
    """

    step: float
    zero: float
    checked: int
    agreed: int

    @property
    def agreement(self) -> float:
        return 1.0 if self.checked == 0 else self.agreed / self.checked

    def to_dict(self) -> dict[str, Any]:
        return {
            "step": self.step,
            "zero": self.zero,
            "checked": self.checked,
            "agreed": self.agreed,
            "agreement": self.agreement,
        }


def cross_check_curvature(
    report: CurvatureReport,
    *,
    step: float = DEFAULT_STEP,
    zero: float = DEFAULT_ZERO,
    samples: int = 16,
) -> CurvatureCrossCheck:
    """Compare :func:`second_difference_sign` with the closed-form sign on both curves.

    *samples* abscissae are spread over each curve's interior.  Points within
    ``10 * step`` (in power) of the inflection are skipped, as are curves
    whose abscissa user has no direct gain.
    """
    ch = report.channel
    checked = agreed = 0
    for pinned_index, curve, q in ((2, ch, report.q1), (1, ch.swapped(), report.q2)):
        if curve.a == 0:
            continue
        upper, _ = curve.rates(p1=curve.p_max, p2=curve.p_max)
        if upper <= 4.0 * step:
            continue
        for c in np.linspace(2.0 * step, upper - 2.0 * step, samples):
            power = f2_power_at(ch=curve, c1=float(c))
            if math.isfinite(q) and abs(power - q) <= 10.0 * step:
                continue
            numeric = second_difference_sign(
                ch=ch, c1=float(c), h=step, zero=zero, pinned_index=pinned_index,
            )
            if numeric == 0:
                continue
            checked += 1
            agreed += int(numeric == f2_curvature_sign(ch=curve, p1=power))
    logger.debug("curvature cross-check: %d of %d samples agree", agreed, checked)
    return CurvatureCrossCheck(step=step, zero=zero, checked=checked, agreed=agreed)
