"""
src.sounder.metrics.dispersion
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Delay-dispersion metrics of a :class:`~src.sounder.models.TapSet`.

Delays are excess delays measured from the first tap of the set and
weights are linear powers, so every moment is invariant to a uniform power
scale and to a constant delay shift.
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from src.sounder.errors import EmptyTapSet, ZeroSpread
from src.sounder.models.taps import TapSet
from src.sounder.reports import DispersionReport

logger = logging.getLogger(__name__)

DEFAULT_GAP_US = 2.0
DEFAULT_RISE_DB = 3.0


def _weights(taps: TapSet) -> Tuple[np.ndarray, np.ndarray]:
    if len(taps) == 0:
        raise EmptyTapSet("dispersion metrics need at least one tap")
    delays = taps.delays_us
    return delays - delays[0], taps.power_linear


def mean_excess_delay(taps: TapSet) -> float:
    tau, p = _weights(taps)
    return float(np.sum(p * tau) / np.sum(p))


def rms_delay_spread(taps: TapSet) -> float:
    tau, p = _weights(taps)
    mean = np.sum(p * tau) / np.sum(p)
    second = np.sum(p * tau**2) / np.sum(p)
    # rounding can leave a tiny negative variance for a single tap
    return float(math.sqrt(max(second - mean**2, 0.0)))


def max_excess_delay(taps: TapSet, x_db: float = 25.0) -> float:
    """Largest excess delay among taps within *x_db* of the peak."""
    tau, _ = _weights(taps)
    db = taps.powers_db
    strong = db >= db.max() - x_db
    return float(tau[strong].max())


def coherence_bandwidth(rms_us: float) -> float:
    """50%-correlation coherence bandwidth ``1 / (5 * rms)`` in Hz."""
    if rms_us < 0:
        raise ValueError("rms delay spread must be >= 0")
    if rms_us == 0:
        raise ZeroSpread("coherence bandwidth is unbounded for a zero delay spread")
    return 1.0 / (5.0 * rms_us * 1e-6)


# --------------------------------------------------------------------------- #
# Clusters                                                                    #
# --------------------------------------------------------------------------- #
def cluster_spans(
    taps: TapSet,
    gap_us: float = DEFAULT_GAP_US,
    rise_db: Optional[float] = DEFAULT_RISE_DB,
) -> List[Tuple[float, float]]:
    """``(first_delay, last_delay)`` of each cluster.

    A new cluster starts when the delay step exceeds ``gap_us`` or, unless
    ``rise_db`` is ``None``, when the power climbs by more than ``rise_db``.
    """
    if gap_us <= 0:
        raise ValueError("gap_us must be > 0")
    if len(taps) == 0:
        raise EmptyTapSet("cannot cluster an empty tap set")
    delays = taps.delays_us
    db = taps.powers_db
    spans: List[Tuple[float, float]] = []
    start = delays[0]
    for i in range(1, delays.size):
        gap = delays[i] - delays[i - 1] > gap_us + 1e-9
        rise = rise_db is not None and db[i] - db[i - 1] > rise_db
        if gap or rise:
            spans.append((float(start), float(delays[i - 1])))
            start = delays[i]
    spans.append((float(start), float(delays[-1])))
    return spans


def cluster_count(
    taps: TapSet,
    gap_us: float = DEFAULT_GAP_US,
    rise_db: Optional[float] = DEFAULT_RISE_DB,
) -> int:
    return len(cluster_spans(taps, gap_us, rise_db))


def summarize(
    taps: TapSet,
    x_db: float = 25.0,
    gap_us: float = DEFAULT_GAP_US,
    rise_db: Optional[float] = DEFAULT_RISE_DB,
    *,
    noise_floor_db: Optional[float] = None,
    threshold_db: Optional[float] = None,
) -> DispersionReport:
    """Every dispersion metric of *taps* in one report."""
    rms = rms_delay_spread(taps)
    report = DispersionReport(
        n_taps=len(taps),
        mean_excess_delay_us=mean_excess_delay(taps),
        rms_delay_spread_us=rms,
        max_excess_delay_us=max_excess_delay(taps, x_db),
        x_db=x_db,
        coherence_bandwidth_hz=coherence_bandwidth(rms) if rms > 0 else None,
        cluster_count=cluster_count(taps, gap_us, rise_db),
        noise_floor_db=noise_floor_db,
        threshold_db=threshold_db,
    )
    logger.debug("dispersion summary: %s", report)
    return report
