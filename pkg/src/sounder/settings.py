"""Process-wide defaults, mirroring the FM-band measurement setup."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Tuple

from pydantic import BaseModel, Field

OUTPUT_DIR_ENV = "SOUNDER_OUTPUT_DIR"
LOG_LEVEL_ENV = "SOUNDER_LOG_LEVEL"


class Settings(BaseModel):
    order: int = 10
    feedback_taps: Tuple[int, ...] = (10, 3)
    seed: int = 0x3FF
    pad_len: int = 77
    chip_rate_hz: float = 1e6
    repetitions: int = 200
    center_freq_hz: float = 86e6

    window_len: int = 100
    threshold_db: float = 6.0
    x_db: float = 25.0
    cluster_gap_us: float = 2.0
    cluster_rise_db: float = 3.0

    output_dir: Path = Field(default_factory=Path.cwd)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Defaults, with the output directory and log level taken from the environment."""
        overrides = {}
        if os.environ.get(OUTPUT_DIR_ENV):
            overrides["output_dir"] = Path(os.environ[OUTPUT_DIR_ENV])
        if os.environ.get(LOG_LEVEL_ENV):
            overrides["log_level"] = os.environ[LOG_LEVEL_ENV].upper()
        return cls(**overrides)
