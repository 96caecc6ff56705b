"""
src.sounder.estimator.equalizer
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Known-frame sidelobe equalizer.

With a zero-padded frame the correlator only ever sees partial overlaps of
the sequence, so every path leaks into its neighbours through the aperiodic
response ``R[s]``.  Inside one CIR window the correlator output is

    y[k] = sum_j R[k - j] * h[j],      0 <= k, j < W

a Toeplitz system in the window's taps.  The equalizer builds ``R`` once
from three back-to-back frames (the middle one sees both neighbours) and
solves every window for ``h`` with :func:`scipy.linalg.solve_toeplitz`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg, signal

from src.sounder.waveform import SoundingSequence, frame_transmit_stream

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SidelobeEqualizer:
    column: np.ndarray  # R[0], R[1], ..., R[W-1]
    row: np.ndarray  # R[0], R[-1], ..., R[-(W-1)]

    @property
    def window_len(self) -> int:
        return int(self.column.size)

    def response(self) -> np.ndarray:
        """Dense ``W x W`` matrix ``R[k - j]``."""
        return linalg.toeplitz(self.column, self.row)

    def apply(self, windows: np.ndarray) -> np.ndarray:
        """Solve each row of ``windows`` (shape ``(N, W)``) for its taps."""
        windows = np.atleast_2d(np.asarray(windows, dtype=np.complex128))
        if windows.shape[1] != self.window_len:
            raise ValueError(
                f"window length {windows.shape[1]} does not match equalizer ({self.window_len})"
            )
        rhs = windows.T
        re = linalg.solve_toeplitz((self.column, self.row), np.ascontiguousarray(rhs.real))
        im = linalg.solve_toeplitz((self.column, self.row), np.ascontiguousarray(rhs.imag))
        return np.asarray(re + 1j * im).reshape(rhs.shape).T


def sidelobe_equalizer(seq: SoundingSequence, window_len: int) -> SidelobeEqualizer:
    if not 1 <= window_len <= seq.frame_len:
        raise ValueError(f"window_len must be in 1..{seq.frame_len}")
    F = seq.frame_len
    stream = frame_transmit_stream(seq, 3).real
    chips = seq.chips.astype(np.float64)
    r = signal.correlate(stream, chips, mode="valid") / seq.length
    lags = np.arange(window_len)
    column = r[F + lags]
    row = r[F - lags]
    logger.debug(
        "equalizer W=%d: max sidelobe %.3e", window_len, np.max(np.abs(column[1:]), initial=0.0)
    )
    return SidelobeEqualizer(column=column, row=row)
