"""Named two-user channels.

Four reference channels are registered:

- ``unit-symmetric``   a = b = c = d = 1, p_max = 1 (hull A-B-C)
- ``inflected``        a = 20, b = 1, c = 15, d = 5, p_max = 1 (F2 inflected)
- ``strong-symmetric`` a = c = 1, b = d = 2, p_max = 1 (single A-C chord)
- ``decoupled``        a = c = 1, b = d = 0, p_max = 1 (no interference)

More can be added through the module-level ``presets`` registry::

    import rateregion as rr

    rr.presets.register("my-link", rr.NormalizedTwoUser(a=4, b=0.5, c=3, d=0.2, p_max=1))
    spec = rr.presets.spec("my-link")
"""

from __future__ import annotations

from rateregion._channel import ChannelSpec, NormalizedTwoUser


class PresetRegistry:
    """Named channel registry."""

    def __init__(self) -> None:
        self._channels: dict[str, NormalizedTwoUser] = {}

    def register(self, name: str, channel: NormalizedTwoUser) -> None:
        """Register a channel by name."""
        if not isinstance(channel, NormalizedTwoUser):
            msg = f"Expected a NormalizedTwoUser instance, got {type(channel).__name__}"
            raise TypeError(msg)
        self._channels[name] = channel

    def get(self, name: str) -> NormalizedTwoUser:
        """Look up a registered channel by name."""
        try:
            return self._channels[name]
        except KeyError:
            available = ", ".join(sorted(self._channels))
            raise KeyError(
                f"Unknown preset {name!r}. Available: {available}"
            ) from None

    def spec(self, name: str) -> ChannelSpec:
        """The registered channel as a unit-noise :class:`ChannelSpec`."""
        return self.get(name=name).to_spec()

    def __getitem__(self, name: str) -> NormalizedTwoUser:
        return self.get(name=name)

    def __contains__(self, name: str) -> bool:
        return name in self._channels

    def names(self) -> list[str]:
        """Return sorted list of registered preset names."""
        return sorted(self._channels)


presets = PresetRegistry()
presets.register("unit-symmetric", NormalizedTwoUser(a=1.0, b=1.0, c=1.0, d=1.0, p_max=1.0))
presets.register("inflected", NormalizedTwoUser(a=20.0, b=1.0, c=15.0, d=5.0, p_max=1.0))
presets.register("strong-symmetric", NormalizedTwoUser.symmetric(a=1.0, b=2.0, p_max=1.0))
presets.register("decoupled", NormalizedTwoUser.symmetric(a=1.0, b=0.0, p_max=1.0))
