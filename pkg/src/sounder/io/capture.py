"""
src.sounder.io.capture
~~~~~~~~~~~~~~~~~~~~~~

Raw IQ capture files.

A capture is two files side by side:

* ``<stem>.iq``: little-endian float32 pairs, I then Q, 8 bytes per sample;
* ``<stem>.iqmeta.json``: a JSON sidecar, keys sorted, whose ``format`` is
  ``"sounder-iq/1"``.

Writers are deterministic, so the same capture always gives the same bytes.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, ValidationError

from src.sounder.errors import FormatError, NonFiniteSample, ParseError

logger = logging.getLogger(__name__)

CAPTURE_FORMAT = "sounder-iq/1"
CAPTURE_DTYPE = "cf32_le"
SIDECAR_SUFFIX = ".iqmeta.json"
BYTES_PER_SAMPLE = 8

Provenance = Literal["emulated", "imported"]


@dataclass(frozen=True, eq=False)
class IqCapture:
    samples: np.ndarray
    sample_rate_hz: float
    center_freq_hz: float = 86e6
    capture_id: str = ""
    provenance: Provenance = "emulated"
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be > 0")
        object.__setattr__(
            self, "samples", np.ascontiguousarray(self.samples, dtype=np.complex64)
        )

    @property
    def n_samples(self) -> int:
        return int(self.samples.size)


class CaptureMeta(BaseModel):
    format: str = CAPTURE_FORMAT
    dtype: str = CAPTURE_DTYPE
    sample_rate_hz: float = Field(gt=0)
    center_freq_hz: float
    n_samples: int = Field(ge=0)
    capture_id: str
    provenance: Provenance
    extra: Dict[str, Any] = Field(default_factory=dict)


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + SIDECAR_SUFFIX)


# --------------------------------------------------------------------------- #
# Read / write                                                                #
# --------------------------------------------------------------------------- #
def write_capture(capture: IqCapture, path: str | Path) -> Path:
    """Write payload and sidecar; returns the payload path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    interleaved = np.empty(2 * capture.n_samples, dtype="<f4")
    interleaved[0::2] = capture.samples.real
    interleaved[1::2] = capture.samples.imag
    path.write_bytes(interleaved.tobytes())

    meta = CaptureMeta(
        sample_rate_hz=capture.sample_rate_hz,
        center_freq_hz=capture.center_freq_hz,
        n_samples=capture.n_samples,
        capture_id=capture.capture_id,
        provenance=capture.provenance,
        extra=capture.extra,
    )
    sidecar_path(path).write_text(
        json.dumps(meta.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    )
    logger.info("wrote %d samples to %s", capture.n_samples, path)
    return path


def read_meta(path: str | Path) -> CaptureMeta:
    side = sidecar_path(path)
    try:
        data = json.loads(side.read_text())
    except FileNotFoundError as exc:
        raise FormatError(f"capture sidecar {side} not found") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"capture sidecar {side} is not JSON: {exc}") from exc
    if not isinstance(data, dict) or data.get("format") != CAPTURE_FORMAT:
        raise FormatError(f"{side} is not a {CAPTURE_FORMAT} sidecar")
    try:
        meta = CaptureMeta.model_validate(data)
    except ValidationError as exc:
        raise FormatError(f"invalid capture sidecar {side}: {exc}") from exc
    if meta.dtype != CAPTURE_DTYPE:
        raise FormatError(f"unsupported sample type {meta.dtype!r}")
    return meta


def read_capture(path: str | Path) -> IqCapture:
    path = Path(path)
    meta = read_meta(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError as exc:
        raise FormatError(f"capture payload {path} not found") from exc
    if len(raw) % BYTES_PER_SAMPLE:
        raise FormatError(f"{path} is truncated: {len(raw)} bytes is not a whole number of samples")
    n = len(raw) // BYTES_PER_SAMPLE
    if n != meta.n_samples:
        raise FormatError(f"{path} holds {n} samples but its sidecar says {meta.n_samples}")

    samples = np.frombuffer(raw, dtype="<c8").astype(np.complex64)
    logger.debug("read %d samples from %s", n, path)
    return IqCapture(
        samples=samples,
        sample_rate_hz=meta.sample_rate_hz,
        center_freq_hz=meta.center_freq_hz,
        capture_id=meta.capture_id,
        provenance=meta.provenance,
        extra=meta.extra,
    )


# --------------------------------------------------------------------------- #
# Import                                                                      #
# --------------------------------------------------------------------------- #
def import_csv_iq(
    path: str | Path,
    sample_rate_hz: float,
    *,
    center_freq_hz: float = 86e6,
    capture_id: Optional[str] = None,
) -> IqCapture:
    """Read an ``i,q`` CSV produced by an external conversion step."""
    path = Path(path)
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot parse {path}: {exc}") from exc
    if [c.strip().lower() for c in frame.columns] != ["i", "q"]:
        raise ParseError(f"{path} must have the header 'i,q', got {list(frame.columns)}")
    try:
        values = frame.apply(pd.to_numeric).to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{path} holds a non-numeric sample: {exc}") from exc
    if not np.all(np.isfinite(values)):
        row = int(np.argmax(~np.isfinite(values).all(axis=1)))
        raise NonFiniteSample(f"{path} row {row + 1} is not finite")

    logger.info("imported %d samples from %s", len(values), path)
    return IqCapture(
        samples=values[:, 0] + 1j * values[:, 1],
        sample_rate_hz=sample_rate_hz,
        center_freq_hz=center_freq_hz,
        capture_id=capture_id or path.stem,
        provenance="imported",
        extra={"source": path.name},
    )
