"""
src.sounder.emulator.channel
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Tapped-delay-line channel built from a :class:`~src.sounder.models.TapSet`.

Random draws use numpy's ``PCG64`` bit generator seeded with the
realisation seed, so a given ``(taps, fading_mode, seed)`` produces the same
gains on every platform.

fading mode        | gains
-------------------|--------------------------------------------------------
``static``         | ``a_i * exp(j * theta_i)``, ``theta_i ~ U[0, 2pi)``
``block_rayleigh`` | ``a_i * CN(0, 1)``, redrawn for every transmitted frame
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Literal, Tuple

import numpy as np

from src.sounder.errors import EmptyTapSet, OffGridDelay
from src.sounder.models.taps import TapSet

logger = logging.getLogger(__name__)

FadingMode = Literal["static", "block_rayleigh"]
FADING_MODES: Tuple[str, ...] = ("static", "block_rayleigh")

# tolerance for a tap delay to count as on the sample grid
GRID_TOLERANCE_US = 1e-9


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Integer-delay taps with their complex gains."""

    delays: np.ndarray  # int64 samples, strictly ascending
    gains: np.ndarray  # complex128; frame-0 gains for block fading
    amplitudes: np.ndarray  # float64 source tap amplitudes
    fading_mode: FadingMode = "static"
    rng_seed: int = 0
    frame_len: int = 1100

    def __post_init__(self) -> None:
        if self.delays.size == 0:
            raise EmptyTapSet("a channel needs at least one tap")
        if np.any(self.delays < 0) or np.any(np.diff(self.delays) <= 0):
            raise ValueError("tap delays must be >= 0 and strictly ascending")
        if self.fading_mode not in FADING_MODES:
            raise ValueError(f"unknown fading mode {self.fading_mode!r}")
        if self.frame_len < 1:
            raise ValueError("frame_len must be >= 1")

    @property
    def taps(self) -> List[Tuple[int, complex]]:
        return [(int(d), complex(g)) for d, g in zip(self.delays, self.gains)]

    @property
    def max_delay(self) -> int:
        return int(self.delays[-1])

    def frame_gains(self, n_frames: int) -> np.ndarray:
        """Gains per transmitted frame, shape ``(n_frames, n_taps)``.

        Row ``k`` does not depend on ``n_frames``.
        """
        if n_frames < 1:
            raise ValueError("n_frames must be >= 1")
        if self.fading_mode == "static":
            return np.broadcast_to(self.gains, (n_frames, self.gains.size)).copy()
        draws = make_rng(self.rng_seed).standard_normal((n_frames, self.delays.size, 2))
        unit = (draws[..., 0] + 1j * draws[..., 1]) / np.sqrt(2.0)
        return unit * self.amplitudes


# --------------------------------------------------------------------------- #
# Construction                                                                #
# --------------------------------------------------------------------------- #
def realize_channel(
    taps: TapSet,
    sample_rate_hz: float,
    fading_mode: FadingMode = "static",
    seed: int = 0,
    *,
    frame_len: int = 1100,
) -> ChannelRealization:
    """Quantise *taps* to the sample grid and draw their gains from *seed*."""
    if sample_rate_hz <= 0:
        raise ValueError("sample_rate_hz must be > 0")
    if len(taps) == 0:
        raise EmptyTapSet("cannot realise a channel from an empty tap set")

    sample_us = 1e6 / sample_rate_hz
    raw = taps.delays_us / sample_us
    delays = np.rint(raw).astype(np.int64)
    off = np.abs(raw - delays) * sample_us
    if np.any(off > GRID_TOLERANCE_US):
        bad = taps.delays_us[np.argmax(off)]
        raise OffGridDelay(f"tap delay {bad} us is not a whole number of {sample_us} us samples")

    amplitudes = taps.amplitudes
    if fading_mode == "static":
        theta = make_rng(seed).uniform(0.0, 2 * np.pi, size=amplitudes.size)
        gains = amplitudes * np.exp(1j * theta)
    elif fading_mode == "block_rayleigh":
        gains = np.empty(amplitudes.size, dtype=np.complex128)
    else:
        raise ValueError(f"unknown fading mode {fading_mode!r}")

    ch = ChannelRealization(
        delays=delays,
        gains=gains,
        amplitudes=amplitudes,
        fading_mode=fading_mode,
        rng_seed=seed,
        frame_len=frame_len,
    )
    if fading_mode == "block_rayleigh":
        object.__setattr__(ch, "gains", ch.frame_gains(1)[0])
    logger.info(
        "realised %s channel with %d taps (max delay %d samples, seed %d)",
        fading_mode,
        delays.size,
        ch.max_delay,
        seed,
    )
    return ch


# --------------------------------------------------------------------------- #
# Application                                                                 #
# --------------------------------------------------------------------------- #
def apply_channel(tx: np.ndarray, ch: ChannelRealization) -> np.ndarray:
    """``out[n] = sum_i g_i * tx[n - d_i]``; length ``len(tx) + max delay``."""
    tx = np.asarray(tx, dtype=np.complex128)
    if tx.size == 0:
        raise ValueError("tx must not be empty")
    n = tx.size
    out = np.zeros(n + ch.max_delay, dtype=np.complex128)

    if ch.fading_mode == "static":
        for d, g in zip(ch.delays, ch.gains):
            out[d : d + n] += g * tx
        return out

    # block fading: the gain follows the frame the sample was sent in
    n_frames = -(-n // ch.frame_len)
    per_frame = ch.frame_gains(n_frames)
    for i, d in enumerate(ch.delays):
        g = np.repeat(per_frame[:, i], ch.frame_len)[:n]
        out[d : d + n] += g * tx
    return out
