"""High level helpers composing generation, emulation, estimation and reporting."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from src.sounder.config.sequence import SequenceSpec
from src.sounder.emulator.channel import FadingMode
from src.sounder.emulator.noise import emulate
from src.sounder.errors import FormatError
from src.sounder.estimator.averaging import AveragingMode, average_cirs
from src.sounder.estimator.correlator import align, sliding_correlate
from src.sounder.estimator.equalizer import sidelobe_equalizer
from src.sounder.estimator.pdp import Pdp, estimate_noise_floor, extract_taps, to_pdp
from src.sounder.io.capture import IqCapture, write_capture
from src.sounder.io.tables import write_json, write_pdp, write_residuals
from src.sounder.metrics.compare import compare
from src.sounder.metrics.dispersion import summarize
from src.sounder.models.registry import get_model
from src.sounder.models.segments import PdpModel
from src.sounder.models.taps import TapSet, sample_taps
from src.sounder.reports import CompareReport, DispersionReport
from src.sounder.waveform import SoundingSequence, frame_transmit_stream

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------- #
# Single stages                                                               #
# --------------------------------------------------------------------------- #
def generate_capture(
    spec: SequenceSpec,
    repetitions: int = 200,
    *,
    center_freq_hz: float = 86e6,
) -> tuple[SoundingSequence, IqCapture]:
    """Transmit capture of *repetitions* frames; the sidecar records *spec*."""
    seq = spec.build()
    stream = frame_transmit_stream(seq, repetitions)
    capture = IqCapture(
        samples=stream,
        sample_rate_hz=seq.chip_rate,
        center_freq_hz=center_freq_hz,
        capture_id=f"tx-m{seq.order}-r{repetitions}",
        provenance="emulated",
        extra={"stage": "tx", "repetitions": repetitions, "sequence": spec.model_dump(mode="json")},
    )
    return seq, capture


def emulate_capture(
    tx: IqCapture,
    model: PdpModel,
    *,
    spacing_us: Optional[float] = None,
    min_db: float = -40.0,
    snr_db: Optional[float] = 30.0,
    fading_mode: FadingMode = "static",
    seed: int = 0,
) -> IqCapture:
    """Pass *tx* through taps sampled from *model*, then add noise."""
    if snr_db is not None and math.isinf(snr_db):
        snr_db = None
    sample_us = 1e6 / tx.sample_rate_hz
    spacing_us = sample_us if spacing_us is None else spacing_us
    taps = sample_taps(model, spacing_us, min_db)

    frame_len = 1100
    if "sequence" in tx.extra:
        seq_spec = SequenceSpec.from_dict(tx.extra["sequence"])
        frame_len = (2**seq_spec.order - 1) + seq_spec.pad_len

    rx, _ = emulate(
        tx.samples.astype(np.complex128),
        taps,
        tx.sample_rate_hz,
        fading_mode=fading_mode,
        seed=seed,
        snr_db=snr_db,
        frame_len=frame_len,
    )
    extra = {
        key: value for key, value in tx.extra.items() if key in ("sequence", "repetitions")
    }
    extra.update(
        {
            "stage": "rx",
            "model": model.name,
            "seed": seed,
            "snr_db": snr_db,
            "fading_mode": fading_mode,
            "spacing_us": spacing_us,
            "min_db": min_db,
            "n_taps": len(taps),
        }
    )
    logger.info("emulated %s: %d taps, snr=%s, seed=%d", model.name, len(taps), snr_db, seed)
    return IqCapture(
        samples=rx,
        sample_rate_hz=tx.sample_rate_hz,
        center_freq_hz=tx.center_freq_hz,
        capture_id=f"rx-{model.name}-s{seed}",
        provenance="emulated",
        extra=extra,
    )


def sequence_for(capture: IqCapture, spec: Optional[SequenceSpec] = None) -> SoundingSequence:
    """The sequence named by *spec*, else the one recorded in the capture sidecar."""
    if spec is not None:
        return spec.build()
    if "sequence" not in capture.extra:
        raise FormatError(
            f"capture {capture.capture_id!r} does not record its sequence; pass one explicitly"
        )
    return SequenceSpec.from_dict(capture.extra["sequence"]).build()


def estimate_pdp(
    rx: IqCapture,
    seq: SoundingSequence,
    window_len: int = 100,
    *,
    equalize: bool = True,
    mode: AveragingMode = "magnitude",
) -> Pdp:
    """Correlate, align, average and square; the result carries its noise floor."""
    corr = sliding_correlate(rx.samples, seq)
    offset = align(corr, seq.frame_len)
    equalizer = sidelobe_equalizer(seq, window_len) if equalize else None
    avg = average_cirs(corr, seq.frame_len, offset, window_len, mode=mode, equalizer=equalizer)
    pdp = to_pdp(avg, 1e6 / rx.sample_rate_hz)
    return pdp.with_noise_floor(estimate_noise_floor(pdp))


# --------------------------------------------------------------------------- #
# Full loop                                                                   #
# --------------------------------------------------------------------------- #
@dataclass
class PipelineResult:
    pdp: Pdp
    taps: TapSet
    dispersion: DispersionReport
    comparison: CompareReport
    paths: Dict[str, Path] = field(default_factory=dict)

    def report(self) -> dict:
        return {
            "dispersion": self.dispersion.model_dump(mode="json"),
            "compare": self.comparison.model_dump(mode="json"),
        }


def run_pipeline(
    model: str | PdpModel,
    out_dir: str | Path,
    *,
    snr_db: Optional[float] = 30.0,
    seed: int = 0,
    spec: Optional[SequenceSpec] = None,
    repetitions: int = 200,
    min_db: float = -40.0,
    fading_mode: FadingMode = "static",
    window_len: int = 100,
    threshold_db: float = 6.0,
    x_db: float = 25.0,
    equalize: bool = True,
) -> PipelineResult:
    """Generate, emulate, estimate and compare, writing every artefact to *out_dir*.

    Files: ``tx.iq``, ``rx.iq`` (each with a sidecar), ``seq.json``,
    ``pdp.csv`` (+ ``pdp.meta.json``), ``report.json`` and ``compare.csv``.
    """
    if snr_db is not None and math.isinf(snr_db):
        snr_db = None
    pdp_model = get_model(model) if isinstance(model, str) else model
    spec = spec or SequenceSpec()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    seq, tx = generate_capture(spec, repetitions)
    rx = emulate_capture(
        tx, pdp_model, min_db=min_db, snr_db=snr_db, fading_mode=fading_mode, seed=seed
    )
    pdp = estimate_pdp(rx, seq, window_len, equalize=equalize)
    taps = extract_taps(pdp, threshold_db)
    dispersion = summarize(
        taps, x_db, noise_floor_db=pdp.noise_floor_db, threshold_db=threshold_db
    )
    comparison = compare(pdp, pdp_model, threshold_db)

    paths = {
        "tx": write_capture(tx, out / "tx.iq"),
        "rx": write_capture(rx, out / "rx.iq"),
        "seq": write_json(spec.to_json(), out / "seq.json"),
        "pdp": write_pdp(pdp, out / "pdp.csv", {"model": pdp_model.name, "seed": seed}),
        "compare": write_residuals(comparison, out / "compare.csv"),
    }
    result = PipelineResult(pdp, taps, dispersion, comparison, paths)
    paths["report"] = write_json(
        {"model": pdp_model.name, "seed": seed, "snr_db": snr_db, **result.report()},
        out / "report.json",
    )
    logger.info("pipeline for %s written to %s", pdp_model.name, out)
    return result
