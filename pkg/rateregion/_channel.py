"""The physical n-user interference channel and its achievable rates.

Receivers treat every other transmitter as additive Gaussian noise, so the
rate of link *i* is::

    C_i(P) = log2(1 + g_ii P_i / (noise + sum_{j != i} g_ij P_j))

All quantities are linear scale.  dB input is converted once, at the
boundary, by :meth:`ChannelSpec.from_db`.
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

logger = logging.getLogger(__name__)


class ChannelError(ValueError):
    """Invalid channel, power vector or unsupported channel shape."""


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio in dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


# ---------------------------------------------------------------------------
# Power and rate tuples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerVector:
    """Transmit powers ``(P_1, ..., P_n)``, linear scale."""

    powers: tuple[float, ...]

    def __init__(self, powers: Sequence[float] | np.ndarray) -> None:
        object.__setattr__(self, "powers", tuple(float(p) for p in powers))

    def __len__(self) -> int:
        return len(self.powers)

    def __getitem__(self, index: int) -> float:
        return self.powers[index]

    def __iter__(self) -> Iterator[float]:
        return iter(self.powers)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.powers, dtype=float)


@dataclass(frozen=True)
class RatePoint:
    """Achieved rates ``(C_1, ..., C_n)`` in bits per channel use."""

    rates: tuple[float, ...]

    def __init__(self, rates: Sequence[float] | np.ndarray) -> None:
        values = tuple(float(r) for r in rates)
        if any(not math.isfinite(r) or r < 0 for r in values):
            msg = f"rates must be finite and nonnegative, got {values}"
            raise ChannelError(msg)
        object.__setattr__(self, "rates", values)

    def __len__(self) -> int:
        return len(self.rates)

    def __getitem__(self, index: int) -> float:
        return self.rates[index]

    def __iter__(self) -> Iterator[float]:
        return iter(self.rates)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.rates, dtype=float)

    def is_close(self, other: RatePoint, tol: float = 1e-9) -> bool:
        """Componentwise equality within absolute tolerance *tol*."""
        return len(self) == len(other) and all(
            abs(x - y) <= tol for x, y in zip(self.rates, other.rates)
        )


# ---------------------------------------------------------------------------
# Channel description
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """An n-user interference channel.

    Parameters
    ----------
    gains:
        ``n x n`` matrix of channel power gains; entry ``(i, j)`` is the power
        received at receiver *i* from transmitter *j*.
    noise_power:
        Receiver noise variance.
    p_max:
        Maximum transmit power, common to all transmitters.
    """

    gains: np.ndarray
    noise_power: float
    p_max: float

    def __init__(
        self,
        gains: Sequence[Sequence[float]] | np.ndarray,
        noise_power: float,
        p_max: float,
    ) -> None:
        matrix = np.array(gains, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
            msg = f"gains must be a non-empty square matrix, got shape {matrix.shape}"
            raise ChannelError(msg)
        if not np.all(np.isfinite(matrix)) or np.any(matrix < 0):
            msg = "gains must be finite and nonnegative"
            raise ChannelError(msg)
        if not (math.isfinite(noise_power) and noise_power > 0):
            msg = f"noise_power must be positive, got {noise_power}"
            raise ChannelError(msg)
        if not (math.isfinite(p_max) and p_max > 0):
            msg = f"p_max must be positive, got {p_max}"
            raise ChannelError(msg)
        matrix.setflags(write=False)
        object.__setattr__(self, "gains", matrix)
        object.__setattr__(self, "noise_power", float(noise_power))
        object.__setattr__(self, "p_max", float(p_max))

    @property
    def n(self) -> int:
        return int(self.gains.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChannelSpec):
            return NotImplemented
        return (
            self.noise_power == other.noise_power
            and self.p_max == other.p_max
            and np.array_equal(self.gains, other.gains)
        )

    def __hash__(self) -> int:
        return hash((self.gains.tobytes(), self.gains.shape, self.noise_power, self.p_max))

    def scaled(self, factor: float) -> ChannelSpec:
        """Multiply every gain and the noise power by *factor*."""
        return ChannelSpec(
            gains=self.gains * factor,
            noise_power=self.noise_power * factor,
            p_max=self.p_max,
        )

    # -- Serialization -------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "gains": self.gains.tolist(),
            "noise_power": self.noise_power,
            "p_max": self.p_max,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any], *, db: bool = False) -> ChannelSpec:
        """Build from the channel JSON document.

        Accepts either ``{"n", "gains", "noise_power", "p_max"}`` or the
        two-user shorthand ``{"normalized": {"a", "b", "c", "d", "p_max"}}``
        (noise power 1).  With ``db=True`` gains, noise power and p_max are
        read as dB values.
        """
        if not isinstance(data, dict):
            msg = f"channel document must be a JSON object, got {type(data).__name__}"
            raise ChannelError(msg)

        convert = db_to_linear if db else float

        if "normalized" in data:
            block = data["normalized"]
            try:
                ch = NormalizedTwoUser(
                    a=convert(block["a"]),
                    b=convert(block["b"]),
                    c=convert(block["c"]),
                    d=convert(block["d"]),
                    p_max=convert(block["p_max"]),
                )
            except KeyError as exc:
                msg = f"normalized channel is missing field {exc.args[0]!r}"
                raise ChannelError(msg) from None
            return ch.to_spec()

        missing = [k for k in ("gains", "noise_power", "p_max") if k not in data]
        if missing:
            msg = f"channel document is missing field(s): {', '.join(missing)}"
            raise ChannelError(msg)

        gains = np.array(data["gains"], dtype=float)
        if db:
            gains = 10.0 ** (gains / 10.0)
        spec = cls(
            gains=gains,
            noise_power=convert(data["noise_power"]),
            p_max=convert(data["p_max"]),
        )
        if "n" in data and int(data["n"]) != spec.n:
            msg = f"declared n={data['n']} does not match a {spec.n}x{spec.n} gain matrix"
            raise ChannelError(msg)
        return spec

    @classmethod
    def from_json(cls, text: str, *, db: bool = False) -> ChannelSpec:
        return cls.from_dict(data=json.loads(text), db=db)

    @classmethod
    def from_db(
        cls,
        gains_db: Sequence[Sequence[float]] | np.ndarray,
        noise_power_db: float,
        p_max_db: float,
    ) -> ChannelSpec:
        """Build from gains, noise power and p_max all given in dB."""
        return cls(
            gains=10.0 ** (np.asarray(gains_db, dtype=float) / 10.0),
            noise_power=db_to_linear(value_db=noise_power_db),
            p_max=db_to_linear(value_db=p_max_db),
        )


@dataclass(frozen=True)
class NormalizedTwoUser:
    """Two-user channel with gains divided by the noise variance.

    ``a = g11/noise``, ``b = g12/noise``, ``c = g22/noise``, ``d = g21/noise``.
    """

    a: float
    b: float
    c: float
    d: float
    p_max: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                msg = f"normalized gain {name} must be finite and nonnegative, got {value}"
                raise ChannelError(msg)
        if not (math.isfinite(self.p_max) and self.p_max > 0):
            msg = f"p_max must be positive, got {self.p_max}"
            raise ChannelError(msg)

    @classmethod
    def symmetric(cls, a: float, b: float, p_max: float) -> NormalizedTwoUser:
        """Channel with ``a = c`` and ``b = d``."""
        return cls(a=a, b=b, c=a, d=b, p_max=p_max)

    @property
    def is_symmetric(self) -> bool:
        return self.a == self.c and self.b == self.d

    def swapped(self) -> NormalizedTwoUser:
        """Exchange the roles of the two users (a<->c, b<->d)."""
        return NormalizedTwoUser(a=self.c, b=self.d, c=self.a, d=self.b, p_max=self.p_max)

    def rates(self, p1: float, p2: float) -> tuple[float, float]:
        """Rate pair ``(C1, C2)`` at powers ``(p1, p2)``."""
        c1 = math.log2(1.0 + self.a * p1 / (1.0 + self.b * p2))
        c2 = math.log2(1.0 + self.c * p2 / (1.0 + self.d * p1))
        return c1, c2

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "p_max": self.p_max}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> NormalizedTwoUser:
        try:
            return cls(**{name: float(data[name]) for name in ("a", "b", "c", "d", "p_max")})
        except KeyError as exc:
            msg = f"normalized channel is missing field {exc.args[0]!r}"
            raise ChannelError(msg) from None

    def to_spec(self) -> ChannelSpec:
        """Equivalent :class:`ChannelSpec` with unit noise power."""
        return ChannelSpec(
            gains=[[self.a, self.b], [self.d, self.c]],
            noise_power=1.0,
            p_max=self.p_max,
        )


# ---------------------------------------------------------------------------
# Rate evaluation
# ---------------------------------------------------------------------------


def _check_powers(spec: ChannelSpec, powers: np.ndarray) -> None:
    if powers.ndim != 2 or powers.shape[1] != spec.n:
        msg = f"expected powers of shape (k, {spec.n}), got {powers.shape}"
        raise ChannelError(msg)
    if not np.all(np.isfinite(powers)):
        msg = "powers must be finite"
        raise ChannelError(msg)
    if np.any(powers < 0) or np.any(powers > spec.p_max):
        msg = f"powers must lie in [0, {spec.p_max}]"
        raise ChannelError(msg)


def rate_matrix(spec: ChannelSpec, powers: np.ndarray) -> np.ndarray:
    """Evaluate the rates of every row of a ``(k, n)`` power matrix.

    Returns a ``(k, n)`` array of rates in bits per channel use.
    """
    powers = np.asarray(powers, dtype=float)
    _check_powers(spec=spec, powers=powers)

    direct = np.diag(spec.gains)
    signal = powers * direct
    interference = powers @ spec.gains.T - signal
    sinr = signal / (spec.noise_power + interference)
    return np.log1p(sinr) / math.log(2.0)


def rate_tuple(spec: ChannelSpec, p: PowerVector) -> RatePoint:
    """Rates achieved by power vector *p* on channel *spec*."""
    if len(p) != spec.n:
        msg = f"power vector has {len(p)} entries, channel has n={spec.n}"
        raise ChannelError(msg)
    rates = rate_matrix(spec=spec, powers=p.as_array()[np.newaxis, :])[0]
    return RatePoint(rates=rates)


def normalize(spec: ChannelSpec) -> NormalizedTwoUser:
    """Noise-normalized gains of a two-user channel."""
    if spec.n != 2:
        msg = f"normalize requires a two-user channel, got n={spec.n}"
        raise ChannelError(msg)
    g = spec.gains / spec.noise_power
    return NormalizedTwoUser(
        a=float(g[0, 0]),
        b=float(g[0, 1]),
        c=float(g[1, 1]),
        d=float(g[1, 0]),
        p_max=spec.p_max,
    )
