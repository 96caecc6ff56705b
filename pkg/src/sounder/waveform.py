"""
src.sounder.waveform
~~~~~~~~~~~~~~~~~~~~

Maximal-length sounding sequences and the framed transmit stream.

A sequence of order *m* comes from a Fibonacci LFSR whose feedback taps
``{m, t1, t2, ...}`` name the polynomial ``x^m + x^t1 + x^t2 + ... + 1``;
the register obeys ``a[n+m] = a[n] ^ a[n+t1] ^ a[n+t2] ^ ...``.  Bit *i* of
the seed is ``a[i]``.  Chips map bit 1 to +1 and bit 0 to -1.

Each transmitted frame is the L chips followed by ``pad_len`` zeros, one
sample per chip, repeated back to back.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

import numpy as np

from src.sounder.errors import NonPrimitivePolynomial, ZeroSeed

logger = logging.getLogger(__name__)

# Known primitive polynomials, one per register order.
PRIMITIVE_TAPS: Dict[int, Tuple[int, ...]] = {
    2: (2, 1),
    3: (3, 1),
    4: (4, 1),
    5: (5, 2),
    6: (6, 1),
    7: (7, 1),
    8: (8, 4, 3, 2),
    9: (9, 4),
    10: (10, 3),
}

DEFAULT_PAD_LEN = 77
DEFAULT_CHIP_RATE_HZ = 1e6


@dataclass(frozen=True, eq=False)
class SoundingSequence:
    """The +/-1 m-sequence together with its framing parameters."""

    order: int
    feedback_taps: Tuple[int, ...]
    chips: np.ndarray
    seed: int
    pad_len: int = DEFAULT_PAD_LEN
    chip_rate: float = DEFAULT_CHIP_RATE_HZ

    def __post_init__(self) -> None:
        if self.pad_len < 0:
            raise ValueError("pad_len must be >= 0")
        if self.chip_rate <= 0:
            raise ValueError("chip_rate must be > 0")
        self.chips.setflags(write=False)

    @property
    def length(self) -> int:
        return int(self.chips.size)

    @property
    def frame_len(self) -> int:
        return self.length + self.pad_len

    @property
    def chip_duration_us(self) -> float:
        return 1e6 / self.chip_rate

    @property
    def frame_duration_us(self) -> float:
        return self.frame_len * self.chip_duration_us

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"<SoundingSequence m={self.order} taps={self.feedback_taps} "
            f"L={self.length} frame={self.frame_len}>"
        )


# --------------------------------------------------------------------------- #
# Generation                                                                  #
# --------------------------------------------------------------------------- #
def _normalise_taps(order: int, feedback_taps: Iterable[int]) -> Tuple[int, ...]:
    taps = tuple(sorted({int(t) for t in feedback_taps}, reverse=True))
    if not taps or taps[0] != order:
        raise ValueError(f"feedback taps must include the register order {order}")
    if taps[-1] < 1:
        raise ValueError("feedback taps must be in 1..order")
    return taps


def _parity(value: int) -> int:
    return bin(value).count("1") & 1


def generate_msequence(
    order: int,
    feedback_taps: Iterable[int] | None = None,
    seed: int | None = None,
    *,
    pad_len: int = DEFAULT_PAD_LEN,
    chip_rate: float = DEFAULT_CHIP_RATE_HZ,
) -> SoundingSequence:
    """Run the LFSR for one full period and return the chip sequence.

    ``feedback_taps`` defaults to the entry of :data:`PRIMITIVE_TAPS`;
    ``seed`` defaults to the all-ones register.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if feedback_taps is None:
        if order not in PRIMITIVE_TAPS:
            raise ValueError(f"no default feedback taps for order {order}")
        feedback_taps = PRIMITIVE_TAPS[order]
    taps = _normalise_taps(order, feedback_taps)

    full = (1 << order) - 1
    if seed is None:
        seed = full
    if seed == 0:
        raise ZeroSeed("LFSR seed must not be all zeros")
    if seed < 0 or seed > full:
        raise ValueError(f"seed must fit in {order} bits")

    # bit 0 of the state is a[n]; the constant term always feeds back
    mask = 1
    for t in taps[1:]:
        mask |= 1 << t

    state = seed
    bits = np.empty(full, dtype=np.int8)
    for n in range(full):
        bits[n] = state & 1
        feedback = _parity(state & mask)
        state = (state >> 1) | (feedback << (order - 1))
        if state == seed and n < full - 1:
            raise NonPrimitivePolynomial(
                f"taps {list(taps)} repeat after {n + 1} chips, expected {full}"
            )

    chips = np.where(bits == 1, 1, -1).astype(np.int8)
    logger.debug("generated m-sequence order=%d taps=%s seed=%#x", order, taps, seed)
    return SoundingSequence(
        order=order,
        feedback_taps=taps,
        chips=chips,
        seed=seed,
        pad_len=pad_len,
        chip_rate=chip_rate,
    )


# --------------------------------------------------------------------------- #
# Correlation identities                                                      #
# --------------------------------------------------------------------------- #
def periodic_autocorrelation(seq: SoundingSequence, lag: int) -> int:
    """Sum of ``chips[k] * chips[(k + lag) mod L]`` in integer arithmetic."""
    if not 0 <= lag < seq.length:
        raise ValueError(f"lag must be in [0, {seq.length})")
    c = seq.chips.astype(np.int64)
    return int(np.dot(c, np.roll(c, -lag)))


def autocorrelation_profile(seq: SoundingSequence) -> np.ndarray:
    """Periodic autocorrelation at every lag ``0 .. L-1`` (int64)."""
    c = seq.chips.astype(np.int64)
    return np.array([np.dot(c, np.roll(c, -lag)) for lag in range(seq.length)], dtype=np.int64)


# --------------------------------------------------------------------------- #
# Framing                                                                     #
# --------------------------------------------------------------------------- #
def transmit_frame(seq: SoundingSequence) -> np.ndarray:
    """One frame: the chips as complex samples followed by ``pad_len`` zeros."""
    frame = np.zeros(seq.frame_len, dtype=np.complex128)
    frame[: seq.length] = seq.chips
    return frame


def frame_transmit_stream(seq: SoundingSequence, repetitions: int) -> np.ndarray:
    """Repeat the padded frame ``repetitions`` times, contiguously."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    return np.tile(transmit_frame(seq), repetitions)
