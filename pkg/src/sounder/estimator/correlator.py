"""
src.sounder.estimator.correlator
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Sliding cross-correlation against the known chips and frame alignment.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
from scipy import signal

from src.sounder.errors import InputTooShort
from src.sounder.waveform import SoundingSequence

logger = logging.getLogger(__name__)

CorrelationMethod = Literal["auto", "direct", "fft"]


def sliding_correlate(
    rx: np.ndarray,
    seq: SoundingSequence,
    method: CorrelationMethod = "auto",
) -> np.ndarray:
    """``corr[i] = (1/L) * sum_k rx[i + k] * chips[k]`` for every full overlap.

    The result has ``len(rx) - L + 1`` samples.  ``method`` is handed to
    :func:`scipy.signal.correlate`; ``"fft"`` and ``"direct"`` agree to
    floating-point accuracy.
    """
    rx = np.asarray(rx, dtype=np.complex128)
    if rx.size < seq.length:
        raise InputTooShort(
            f"received stream has {rx.size} samples, fewer than one sequence ({seq.length})"
        )
    chips = seq.chips.astype(np.float64)
    corr = signal.correlate(rx, chips, mode="valid", method=method) / seq.length
    logger.debug("correlated %d samples -> %d lags (%s)", rx.size, corr.size, method)
    return corr


def align(corr: np.ndarray, frame_len: int) -> int:
    """Frame phase of the strongest arrival.

    ``|corr|`` is folded modulo ``frame_len`` and averaged per phase; the
    phase with the largest mean wins.
    """
    if frame_len < 1:
        raise ValueError("frame_len must be >= 1")
    mag = np.abs(np.asarray(corr))
    if mag.size < frame_len:
        raise ValueError("correlation stream is shorter than one frame")
    phase = np.arange(mag.size) % frame_len
    sums = np.bincount(phase, weights=mag, minlength=frame_len)
    counts = np.bincount(phase, minlength=frame_len)
    offset = int(np.argmax(sums / counts))
    logger.info("aligned to frame offset %d", offset)
    return offset
