"""
src.sounder.models.segments
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Pydantic models describing a piecewise analytic power-delay profile and the
helpers that evaluate, serialise and load them.

Each segment covers ``[tau_lo, tau_hi)`` in microseconds (``tau_hi`` of
``None`` means unbounded) and is one of

kind              | value (dB)
------------------|----------------------------------------
``linear_db``     | ``slope * t + intercept``
``exponential_db``| ``scale * base ** t + offset``
``constant_db``   | ``level``

where ``t`` is ``tau`` for an ``absolute`` reference and ``tau - tau_lo``
for a ``segment_relative`` one.  Delays outside every segment evaluate to
the model's ``floor_db``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from src.sounder.errors import (
    NegativeDelay,
    NegativeInterval,
    OverlappingSegments,
    SchemaError,
)

SegmentKind = Literal["linear_db", "exponential_db", "constant_db"]
DelayReference = Literal["absolute", "segment_relative"]

_REQUIRED = {
    "linear_db": ("slope", "intercept"),
    "exponential_db": ("scale", "base", "offset"),
    "constant_db": ("level",),
}


# --------------------------------------------------------------------------- #
# Model definitions                                                           #
# --------------------------------------------------------------------------- #
class PdpSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: SegmentKind
    tau_lo: float
    tau_hi: Optional[float] = None
    ref: DelayReference = "absolute"

    slope: Optional[float] = None
    intercept: Optional[float] = None
    scale: Optional[float] = None
    base: Optional[float] = None
    offset: Optional[float] = None
    level: Optional[float] = None

    @model_validator(mode="after")
    def check_layout(self):
        if self.tau_lo < 0 or (self.tau_hi is not None and self.tau_hi <= self.tau_lo):
            raise NegativeInterval(
                f"segment interval [{self.tau_lo}, {self.tau_hi}) is empty or negative"
            )
        missing = [name for name in _REQUIRED[self.kind] if getattr(self, name) is None]
        if missing:
            raise SchemaError(f"{self.kind} segment needs {', '.join(missing)}")
        if self.kind == "exponential_db" and not 0 < self.base <= 1:
            raise SchemaError("exponential base must be in (0, 1]")
        return self

    @property
    def upper(self) -> float:
        return math.inf if self.tau_hi is None else self.tau_hi

    def contains(self, tau_us: float) -> bool:
        return self.tau_lo <= tau_us < self.upper

    def value_at(self, tau_us: float) -> float:
        t = tau_us - self.tau_lo if self.ref == "segment_relative" else tau_us
        if self.kind == "linear_db":
            value = self.slope * t + self.intercept
        elif self.kind == "exponential_db":
            value = self.scale * self.base**t + self.offset
        else:
            value = self.level
        # normalises -0.0
        return float(value) + 0.0


class PdpModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    floor_db: float
    max_delay_us: float
    segments: Tuple[PdpSegment, ...]

    @model_validator(mode="after")
    def check_order(self):
        if self.max_delay_us <= 0:
            raise SchemaError("max_delay_us must be > 0")
        for left, right in zip(self.segments, self.segments[1:]):
            if right.tau_lo < left.tau_lo:
                raise SchemaError("segments must be ordered by tau_lo")
            if left.upper > right.tau_lo:
                raise OverlappingSegments(
                    f"segments [{left.tau_lo}, {left.tau_hi}) and "
                    f"[{right.tau_lo}, {right.tau_hi}) overlap"
                )
        return self

    def segment_at(self, tau_us: float) -> PdpSegment | None:
        for seg in self.segments:
            if seg.contains(tau_us):
                return seg
        return None

    # ------------------------------------------------------------------ #
    # I/O                                                                 #
    # ------------------------------------------------------------------ #
    @classmethod
    def from_yaml(cls, path: str | Path) -> "PdpModel":
        return load_model(Path(path).read_text())

    @classmethod
    def from_json(cls, path: str | Path) -> "PdpModel":
        return load_model(Path(path).read_text())

    @classmethod
    def from_file(cls, path: str | Path) -> "PdpModel":
        ext = Path(path).suffix.lower()
        if ext in {".yml", ".yaml"}:
            return cls.from_yaml(path)
        if ext == ".json":
            return cls.from_json(path)
        raise ValueError(f"Unsupported config extension: {ext}")

    def to_yaml(self) -> str:
        """Serialize this model back to YAML."""
        data = self.model_dump(mode="json", exclude_none=True)
        return yaml.safe_dump(data, sort_keys=False)


# --------------------------------------------------------------------------- #
# Evaluation                                                                  #
# --------------------------------------------------------------------------- #
def eval_alpha(model: PdpModel, tau_us: float) -> float:
    """Power in dB of *model* at delay *tau_us* (microseconds)."""
    if tau_us < 0:
        raise NegativeDelay(f"delay {tau_us} us is negative")
    seg = model.segment_at(tau_us)
    if seg is None:
        return float(model.floor_db)
    return seg.value_at(tau_us)


def delay_grid(max_delay_us: float, spacing_us: float) -> list[float]:
    """``0, spacing, 2*spacing, ...`` up to and including *max_delay_us*."""
    if spacing_us <= 0:
        raise ValueError("spacing_us must be > 0")
    count = int(math.floor(max_delay_us / spacing_us + 1e-9)) + 1
    return [k * spacing_us for k in range(count)]


# --------------------------------------------------------------------------- #
# Serialisation                                                               #
# --------------------------------------------------------------------------- #
def serialize(model: PdpModel) -> str:
    """JSON text that :func:`load_model` turns back into an equal model."""
    return json.dumps(model.model_dump(mode="json", exclude_none=True), indent=2)


def load_model(config_text: str) -> PdpModel:
    """Parse a JSON or YAML model config."""
    try:
        data = json.loads(config_text)
    except json.JSONDecodeError:
        try:
            data = yaml.safe_load(config_text)
        except yaml.YAMLError as exc:
            raise SchemaError(f"Model config is neither JSON nor YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("Model config must be a mapping")
    try:
        return PdpModel.model_validate(data)
    except ValidationError as exc:
        raise SchemaError(f"Invalid model config: {exc}") from exc
