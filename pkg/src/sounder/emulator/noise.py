"""Additive white Gaussian noise and the one-shot emulation helper."""

from __future__ import annotations

import logging
import math

import numpy as np

from src.sounder.emulator.channel import (
    ChannelRealization,
    FadingMode,
    apply_channel,
    make_rng,
    realize_channel,
)
from src.sounder.errors import ZeroSignalPower
from src.sounder.models.taps import TapSet

logger = logging.getLogger(__name__)


def add_awgn(samples: np.ndarray, snr_db: float | None, seed: int) -> np.ndarray:
    """Add circularly-symmetric complex noise at *snr_db* below the mean signal power.

    ``None`` or ``+inf`` disables the noise and returns a copy.
    """
    x = np.asarray(samples, dtype=np.complex128)
    if x.size == 0:
        raise ValueError("samples must not be empty")
    if snr_db is None or (math.isinf(snr_db) and snr_db > 0):
        return x.copy()

    power = float(np.mean(np.abs(x) ** 2))
    if power == 0.0:
        raise ZeroSignalPower("cannot set an SNR against a zero-power signal")
    variance = power / 10 ** (snr_db / 10)
    draws = make_rng(seed).standard_normal((x.size, 2))
    noise = np.sqrt(variance / 2) * (draws[:, 0] + 1j * draws[:, 1])
    logger.debug("added noise: snr=%.2f dB variance=%.3e", snr_db, variance)
    return x + noise


def emulate(
    tx: np.ndarray,
    taps: TapSet,
    sample_rate_hz: float,
    *,
    fading_mode: FadingMode = "static",
    seed: int = 0,
    snr_db: float | None = None,
    frame_len: int = 1100,
) -> tuple[np.ndarray, ChannelRealization]:
    """Channel then noise; the noise stream is seeded with ``seed + 1``."""
    ch = realize_channel(taps, sample_rate_hz, fading_mode, seed, frame_len=frame_len)
    rx = add_awgn(apply_channel(tx, ch), snr_db, seed + 1)
    return rx, ch
