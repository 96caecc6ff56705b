"""
src.sounder.estimator.pdp
~~~~~~~~~~~~~~~~~~~~~~~~~

Power-delay profile built from an averaged CIR, plus noise-floor
estimation and tap detection.

Zero power has no dB value; the dB views use :data:`ZERO_POWER_DB` for it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from src.sounder.errors import EmptyGuard
from src.sounder.estimator.averaging import AveragedProfile
from src.sounder.models.taps import TapSet

logger = logging.getLogger(__name__)

ZERO_POWER_DB = -300.0
# dynamic range of a cf32 capture after equalization; the residue of a
# noiseless capture sits near -90 dB and repeats in every frame
FLOOR_LIMIT_DB = -80.0
GUARD_FRACTION = 0.8


def power_to_db(power: np.ndarray, reference: float | None = None) -> np.ndarray:
    """``10*log10(power / reference)``; zero power maps to :data:`ZERO_POWER_DB`."""
    power = np.asarray(power, dtype=np.float64)
    if reference is None:
        reference = float(power.max(initial=0.0))
    out = np.full(power.shape, ZERO_POWER_DB)
    if reference <= 0:
        return out
    positive = power > 0
    out[positive] = np.maximum(10 * np.log10(power[positive] / reference), ZERO_POWER_DB)
    return out


@dataclass(frozen=True, eq=False)
class Pdp:
    delays_us: np.ndarray
    power_linear: np.ndarray
    n_averaged: int
    noise_floor_db: Optional[float] = None
    offset: int = 0
    delay_resolution_us: float = 1.0

    def __post_init__(self) -> None:
        if self.delays_us.shape != self.power_linear.shape:
            raise ValueError("delays_us and power_linear must have the same shape")
        if np.any(self.power_linear < 0):
            raise ValueError("power_linear must be >= 0")

    @property
    def power_db(self) -> np.ndarray:
        """Peak-normalised dB view (peak = 0 dB)."""
        return power_to_db(self.power_linear)

    def __len__(self) -> int:
        return int(self.delays_us.size)

    def with_noise_floor(self, noise_floor_db: float) -> "Pdp":
        return replace(self, noise_floor_db=float(noise_floor_db))


def to_pdp(avg: AveragedProfile, delay_resolution_us: float = 1.0) -> Pdp:
    """Square the averaged magnitudes onto a ``delay_resolution_us`` grid."""
    if delay_resolution_us <= 0:
        raise ValueError("delay_resolution_us must be > 0")
    mag = np.asarray(avg.magnitude, dtype=np.float64)
    return Pdp(
        delays_us=np.arange(mag.size) * delay_resolution_us,
        power_linear=mag**2,
        n_averaged=avg.n_averaged,
        offset=avg.offset,
        delay_resolution_us=delay_resolution_us,
    )


# --------------------------------------------------------------------------- #
# Noise floor and detection                                                   #
# --------------------------------------------------------------------------- #
def default_guard(pdp: Pdp) -> Tuple[float, float]:
    """Last 20% of the window as a ``(lo_us, hi_us)`` delay range."""
    start = math.ceil(GUARD_FRACTION * len(pdp))
    if start >= len(pdp):
        return (math.inf, math.inf)
    return (float(pdp.delays_us[start]), float(pdp.delays_us[-1]))


def estimate_noise_floor(pdp: Pdp, guard: Tuple[float, float] | None = None) -> float:
    """Median dB power (relative to the peak) over the inclusive *guard* range."""
    lo, hi = default_guard(pdp) if guard is None else guard
    mask = (pdp.delays_us >= lo) & (pdp.delays_us <= hi)
    if not np.any(mask):
        raise EmptyGuard(f"guard range [{lo}, {hi}] us holds no PDP points")
    floor = max(float(np.median(pdp.power_db[mask])), FLOOR_LIMIT_DB)
    logger.info("noise floor %.2f dB over %d guard points", floor, int(mask.sum()))
    return floor


def extract_taps(pdp: Pdp, threshold_db_above_floor: float = 6.0) -> TapSet:
    """Grid points at least *threshold* dB above the floor.

    Powers are relative to the peak and delays to the first kept point.  A
    threshold of zero keeps every point.
    """
    if threshold_db_above_floor < 0:
        raise ValueError("threshold must be >= 0")
    db = pdp.power_db
    if threshold_db_above_floor == 0:
        keep = np.ones(db.shape, dtype=bool)
    else:
        floor = pdp.noise_floor_db
        if floor is None:
            floor = estimate_noise_floor(pdp)
        keep = db >= floor + threshold_db_above_floor
    if not np.any(keep):
        logger.info("no taps above %.1f dB over the floor", threshold_db_above_floor)
        return TapSet()
    delays = pdp.delays_us[keep]
    taps = TapSet.from_arrays(delays - delays[0], db[keep])
    logger.debug("extracted %d taps", len(taps))
    return taps
