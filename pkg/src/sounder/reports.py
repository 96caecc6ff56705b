"""
src.sounder.reports
~~~~~~~~~~~~~~~~~~~

Typed artefacts passed from the metrics code to the CLI and the writers.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field


class _Report(BaseModel):
    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)

    def to_table(self) -> str:
        """Two-column ``field | value`` text table of the scalar fields."""
        rows = [
            (key, value)
            for key, value in self.model_dump(mode="json").items()
            if not isinstance(value, (list, dict))
        ]
        frame = pd.DataFrame(rows, columns=["field", "value"])
        return frame.to_string(index=False)


class DispersionReport(_Report):
    n_taps: int
    mean_excess_delay_us: float
    rms_delay_spread_us: float
    max_excess_delay_us: float
    x_db: float
    coherence_bandwidth_hz: Optional[float] = None
    cluster_count: int
    noise_floor_db: Optional[float] = None
    threshold_db: Optional[float] = None


class ClusterDelta(BaseModel):
    start_us: float
    end_us: float
    n_points: int
    pdp_peak_db: float
    model_peak_db: float
    delta_db: float
    rmse_db: Optional[float] = None


class CompareReport(_Report):
    model: str
    rmse_db: float
    n_compared: int
    noise_floor_db: float
    threshold_db: float
    pdp_cluster_count: int
    model_cluster_count: int
    clusters: List[ClusterDelta] = Field(default_factory=list)
    # per-delay residual rows; written to CSV, not to the JSON report
    residuals: List[Dict[str, Any]] = Field(default_factory=list, exclude=True)

    def to_table(self) -> str:
        text = super().to_table()
        if not self.clusters:
            return text
        frame = pd.DataFrame([c.model_dump() for c in self.clusters])
        return f"{text}\n\n{frame.to_string(index=False)}"
