"""
src.sounder.estimator.averaging
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Cut the correlation stream into one CIR window per frame and average the
windows non-coherently.

mode          | averaged value at delay ``k``
--------------|------------------------------------------
``magnitude`` | ``mean_A |h_A[k]|``
``power``     | ``sqrt(mean_A |h_A[k]|^2)``

Squaring the ``power`` profile therefore gives the mean of ``|h|^2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional

import numpy as np

from src.sounder.errors import NoCompleteFrame
from src.sounder.estimator.equalizer import SidelobeEqualizer

logger = logging.getLogger(__name__)

AveragingMode = Literal["magnitude", "power"]


@dataclass(frozen=True, eq=False)
class Cir:
    """One instantaneous CIR; delay 0 is the aligned strongest arrival."""

    taps: np.ndarray
    delay_resolution_us: float
    frame_index: int

    @property
    def delays_us(self) -> np.ndarray:
        return np.arange(self.taps.size) * self.delay_resolution_us


@dataclass(frozen=True, eq=False)
class AveragedProfile:
    magnitude: np.ndarray
    n_averaged: int
    mode: AveragingMode = "magnitude"
    offset: int = 0
    equalized: bool = False


def _window_matrix(corr: np.ndarray, frame_len: int, offset: int, window_len: int) -> np.ndarray:
    if frame_len < 1 or window_len < 1:
        raise ValueError("frame_len and window_len must be >= 1")
    if offset < 0:
        raise ValueError("offset must be >= 0")
    corr = np.asarray(corr)
    span = corr.size - offset - window_len
    if span < 0:
        raise NoCompleteFrame(
            f"a {window_len}-sample window at offset {offset} does not fit in {corr.size} lags"
        )
    n_frames = span // frame_len + 1
    idx = offset + np.arange(n_frames)[:, None] * frame_len + np.arange(window_len)
    return corr[idx]


def frame_cirs(
    corr: np.ndarray,
    frame_len: int,
    offset: int,
    window_len: int,
    *,
    equalizer: Optional[SidelobeEqualizer] = None,
    delay_resolution_us: float = 1.0,
) -> List[Cir]:
    """The per-frame CIRs that :func:`average_cirs` combines."""
    windows = _window_matrix(corr, frame_len, offset, window_len)
    if equalizer is not None:
        windows = equalizer.apply(windows)
    return [Cir(w, delay_resolution_us, a) for a, w in enumerate(windows)]


def average_cirs(
    corr: np.ndarray,
    frame_len: int,
    offset: int,
    window_len: int,
    *,
    mode: AveragingMode = "magnitude",
    equalizer: Optional[SidelobeEqualizer] = None,
) -> AveragedProfile:
    """Average the complete per-frame windows of ``corr``."""
    if mode not in ("magnitude", "power"):
        raise ValueError(f"unknown averaging mode {mode!r}")
    windows = _window_matrix(corr, frame_len, offset, window_len)
    if equalizer is not None:
        windows = equalizer.apply(windows)

    mag = np.abs(windows)
    if mode == "magnitude":
        profile = mag.mean(axis=0)
    else:
        profile = np.sqrt((mag**2).mean(axis=0))
    n = windows.shape[0]
    logger.info("averaged %d CIRs (%s, equalized=%s)", n, mode, equalizer is not None)
    return AveragedProfile(
        magnitude=profile,
        n_averaged=n,
        mode=mode,
        offset=offset,
        equalized=equalizer is not None,
    )
