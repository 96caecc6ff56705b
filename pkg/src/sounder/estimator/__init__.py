from .correlator import align, sliding_correlate
from .equalizer import SidelobeEqualizer, sidelobe_equalizer
from .averaging import AveragedProfile, Cir, average_cirs, frame_cirs
from .pdp import (
    ZERO_POWER_DB,
    Pdp,
    estimate_noise_floor,
    extract_taps,
    power_to_db,
    to_pdp,
)

__all__ = [
    "align",
    "sliding_correlate",
    "SidelobeEqualizer",
    "sidelobe_equalizer",
    "AveragedProfile",
    "Cir",
    "average_cirs",
    "frame_cirs",
    "ZERO_POWER_DB",
    "Pdp",
    "estimate_noise_floor",
    "extract_taps",
    "power_to_db",
    "to_pdp",
]
