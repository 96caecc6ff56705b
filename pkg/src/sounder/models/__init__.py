from .segments import PdpModel, PdpSegment, delay_grid, eval_alpha, load_model, serialize
from .taps import Tap, TapSet, analytic_dispersion, sample_taps
from .registry import (
    ModelRegistry,
    available_models,
    builtin_bad_urban,
    builtin_hilly,
    get_model,
    register_model,
)

__all__ = [
    "PdpModel",
    "PdpSegment",
    "delay_grid",
    "eval_alpha",
    "load_model",
    "serialize",
    "Tap",
    "TapSet",
    "analytic_dispersion",
    "sample_taps",
    "ModelRegistry",
    "available_models",
    "builtin_bad_urban",
    "builtin_hilly",
    "get_model",
    "register_model",
]
