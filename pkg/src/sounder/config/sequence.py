"""
src.sounder.config.sequence
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Pydantic model for the serialisable sequence spec and a helper that turns
it into a concrete :class:`~src.sounder.waveform.SoundingSequence`.

Example JSON::

    {"order": 10, "taps": [10, 3], "seed": "0x3FF",
     "pad_len": 77, "chip_rate_hz": 1000000}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List

import yaml
from pydantic import BaseModel, ValidationError, field_serializer, field_validator

from src.sounder.errors import SchemaError
from src.sounder.waveform import (
    DEFAULT_CHIP_RATE_HZ,
    DEFAULT_PAD_LEN,
    SoundingSequence,
    generate_msequence,
)


# --------------------------------------------------------------------------- #
# Model definition                                                            #
# --------------------------------------------------------------------------- #
class SequenceSpec(BaseModel):
    order: int = 10
    taps: List[int] = [10, 3]
    seed: int = 0x3FF
    pad_len: int = DEFAULT_PAD_LEN
    chip_rate_hz: float = DEFAULT_CHIP_RATE_HZ

    @field_validator("seed", mode="before")
    @classmethod
    def parse_hex_seed(cls, value):
        if isinstance(value, str):
            return int(value, 0)
        return value

    @field_serializer("seed")
    def dump_hex_seed(self, value: int) -> str:
        return f"{value:#X}".replace("0X", "0x")

    # ------------------------------------------------------------------ #
    # Factory helpers                                                    #
    # ------------------------------------------------------------------ #
    def build(self) -> SoundingSequence:
        """Generate the sequence this spec describes."""
        return generate_msequence(
            self.order,
            self.taps,
            self.seed,
            pad_len=self.pad_len,
            chip_rate=self.chip_rate_hz,
        )

    @classmethod
    def from_sequence(cls, seq: SoundingSequence) -> "SequenceSpec":
        return cls(
            order=seq.order,
            taps=list(seq.feedback_taps),
            seed=seq.seed,
            pad_len=seq.pad_len,
            chip_rate_hz=seq.chip_rate,
        )

    # ------------------------------------------------------------------ #
    # I/O                                                                 #
    # ------------------------------------------------------------------ #
    @classmethod
    def from_dict(cls, data: dict) -> "SequenceSpec":
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise SchemaError(f"Invalid sequence spec: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "SequenceSpec":
        with open(path, "r") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"Invalid sequence spec JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_yaml(cls, path: str | Path) -> "SequenceSpec":
        with open(path, "r") as fh:
            return cls.from_dict(yaml.safe_load(fh))

    @classmethod
    def from_file(cls, path: str | Path) -> "SequenceSpec":
        ext = Path(path).suffix.lower()
        if ext in {".yml", ".yaml"}:
            return cls.from_yaml(path)
        if ext == ".json":
            return cls.from_json(path)
        raise ValueError(f"Unsupported config extension: {ext}")

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2)

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=False)
