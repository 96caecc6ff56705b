"""FM-band channel-sounding toolkit: waveform, channel emulation, PDP estimation and metrics."""

from src.sounder.errors import DataError, DomainError, SounderError

__all__ = ["DataError", "DomainError", "SounderError"]
