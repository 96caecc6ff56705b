from .channel import (
    FADING_MODES,
    ChannelRealization,
    apply_channel,
    realize_channel,
)
from .noise import add_awgn, emulate

__all__ = [
    "FADING_MODES",
    "ChannelRealization",
    "apply_channel",
    "realize_channel",
    "add_awgn",
    "emulate",
]
