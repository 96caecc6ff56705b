"""
src.sounder.models.taps
~~~~~~~~~~~~~~~~~~~~~~~

Discrete multipath taps and the discretisation of analytic PDP models.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Sequence, Tuple

import numpy as np

from src.sounder.errors import EmptyTapSet
from src.sounder.models.segments import PdpModel, delay_grid, eval_alpha

logger = logging.getLogger(__name__)

Normalization = Literal["none", "unit_total_power"]


@dataclass(frozen=True)
class Tap:
    delay_us: float
    power_db: float
    linear_amplitude: float = field(default=math.nan)

    def __post_init__(self) -> None:
        if self.delay_us < 0:
            raise ValueError("tap delay must be >= 0")
        if math.isnan(self.linear_amplitude):
            object.__setattr__(self, "linear_amplitude", 10 ** (self.power_db / 20))
        if self.linear_amplitude < 0:
            raise ValueError("tap amplitude must be >= 0")


@dataclass(frozen=True)
class TapSet:
    """Ordered (delay, power) taps; may be empty."""

    taps: Tuple[Tap, ...] = ()
    normalization: Normalization = "none"

    def __post_init__(self) -> None:
        object.__setattr__(self, "taps", tuple(self.taps))
        delays = [t.delay_us for t in self.taps]
        if any(b <= a for a, b in zip(delays, delays[1:])):
            raise ValueError("tap delays must be strictly ascending")
        if self.normalization == "unit_total_power" and self.taps:
            total = float(np.sum(self.amplitudes**2))
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"unit_total_power taps sum to {total}")

    # ------------------------------------------------------------------ #
    # Construction                                                       #
    # ------------------------------------------------------------------ #
    @classmethod
    def from_arrays(
        cls,
        delays_us: Iterable[float],
        powers_db: Iterable[float],
        *,
        normalization: Normalization = "none",
    ) -> "TapSet":
        return cls(
            tuple(Tap(float(d), float(p)) for d, p in zip(delays_us, powers_db)),
            normalization,
        )

    def normalized(self) -> "TapSet":
        """Same taps rescaled to unit total power."""
        if not self.taps:
            raise EmptyTapSet("cannot normalise an empty tap set")
        power = self.power_linear
        amps = np.sqrt(power / power.sum())
        taps = tuple(
            Tap(t.delay_us, 20 * math.log10(a) if a > 0 else -math.inf, float(a))
            for t, a in zip(self.taps, amps)
        )
        return TapSet(taps, "unit_total_power")

    # ------------------------------------------------------------------ #
    # Array views                                                        #
    # ------------------------------------------------------------------ #
    @property
    def delays_us(self) -> np.ndarray:
        return np.array([t.delay_us for t in self.taps], dtype=float)

    @property
    def powers_db(self) -> np.ndarray:
        return np.array([t.power_db for t in self.taps], dtype=float)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([t.linear_amplitude for t in self.taps], dtype=float)

    @property
    def power_linear(self) -> np.ndarray:
        return self.amplitudes**2

    def __len__(self) -> int:
        return len(self.taps)

    def __iter__(self) -> Iterator[Tap]:
        return iter(self.taps)

    def __getitem__(self, idx: int) -> Tap:
        return self.taps[idx]


# --------------------------------------------------------------------------- #
# Discretisation                                                              #
# --------------------------------------------------------------------------- #
def sample_taps(
    model: PdpModel,
    spacing_us: float,
    min_power_db: float = -math.inf,
    normalize: bool = False,
    *,
    include_floor: bool = False,
) -> TapSet:
    """Evaluate *model* on a regular delay grid and keep the strong points.

    ``min_power_db`` is relative to the strongest grid point.  Grid points
    that fall outside every segment carry only the model floor and are left
    out unless ``include_floor`` is set.
    """
    grid = delay_grid(model.max_delay_us, spacing_us)
    points: list[Tuple[float, float]] = []
    for tau in grid:
        if not include_floor and model.segment_at(tau) is None:
            continue
        points.append((tau, eval_alpha(model, tau)))
    if not points:
        raise EmptyTapSet(f"model {model.name!r} has no taps on a {spacing_us} us grid")

    peak = max(p for _, p in points)
    kept = [(tau, p) for tau, p in points if p - peak >= min_power_db]
    if not kept:
        raise EmptyTapSet(
            f"threshold {min_power_db} dB removes every tap of {model.name!r}"
        )
    logger.debug("sampled %d taps from %s at %g us", len(kept), model.name, spacing_us)

    taps = TapSet(tuple(Tap(tau, p) for tau, p in kept))
    return taps.normalized() if normalize else taps


def analytic_dispersion(model: PdpModel, spacing_us: float) -> Tuple[float, float]:
    """(mean excess delay, RMS delay spread) in us of the discretised model."""
    from src.sounder.metrics.dispersion import mean_excess_delay, rms_delay_spread

    taps = sample_taps(model, spacing_us)
    return mean_excess_delay(taps), rms_delay_spread(taps)


def on_grid(taps: Sequence[Tap] | TapSet, spacing_us: float) -> bool:
    """True when every delay is an integer multiple of *spacing_us*."""
    return all(
        abs(t.delay_us / spacing_us - round(t.delay_us / spacing_us)) < 1e-9 for t in taps
    )
