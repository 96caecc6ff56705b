"""Compare an estimated PDP against an analytic model on the PDP's own grid."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from src.sounder.errors import EmptyTapSet
from src.sounder.estimator.pdp import Pdp, estimate_noise_floor
from src.sounder.metrics.dispersion import (
    DEFAULT_GAP_US,
    DEFAULT_RISE_DB,
    cluster_count,
    cluster_spans,
)
from src.sounder.models.segments import PdpModel, eval_alpha
from src.sounder.models.taps import TapSet, sample_taps
from src.sounder.reports import ClusterDelta, CompareReport

logger = logging.getLogger(__name__)


def _rmse(residual: np.ndarray) -> float:
    return float(np.sqrt(np.mean(residual**2)))


def compare(
    pdp: Pdp,
    model: PdpModel,
    threshold_db: float = 6.0,
    gap_us: float = DEFAULT_GAP_US,
    rise_db: Optional[float] = DEFAULT_RISE_DB,
) -> CompareReport:
    """RMSE in dB between *pdp* and *model* over the points above floor + threshold.

    Both profiles are normalised to a 0 dB peak on the PDP grid first.
    """
    if len(pdp) == 0:
        raise EmptyTapSet("cannot compare an empty PDP")
    floor = pdp.noise_floor_db
    if floor is None:
        floor = estimate_noise_floor(pdp)

    pdp_db = pdp.power_db
    model_db = np.array([eval_alpha(model, float(t)) for t in pdp.delays_us])
    model_db = model_db - model_db.max()
    included = pdp_db >= floor + threshold_db
    if not np.any(included):
        raise EmptyTapSet(f"no PDP point lies {threshold_db} dB above the {floor:.1f} dB floor")
    residual = pdp_db - model_db

    first = float(pdp.delays_us[included][0])
    measured = TapSet.from_arrays(pdp.delays_us[included] - first, pdp_db[included])
    spans = cluster_spans(measured, gap_us, rise_db)
    clusters = []
    for lo, hi in spans:
        mask = included & (pdp.delays_us >= first + lo - 1e-9) & (pdp.delays_us <= first + hi + 1e-9)
        pdp_peak = float(pdp_db[mask].max())
        model_peak = float(model_db[mask].max())
        clusters.append(
            ClusterDelta(
                start_us=lo,
                end_us=hi,
                n_points=int(mask.sum()),
                pdp_peak_db=pdp_peak,
                model_peak_db=model_peak,
                delta_db=pdp_peak - model_peak,
                rmse_db=_rmse(residual[mask]),
            )
        )

    try:
        model_taps = sample_taps(model, pdp.delay_resolution_us, floor + threshold_db)
        model_clusters = cluster_count(model_taps, gap_us, rise_db)
    except EmptyTapSet:
        model_clusters = 0

    residuals = [
        {
            "delay_us": float(t),
            "pdp_db": float(p),
            "model_db": float(m),
            "residual_db": float(r),
            "included": bool(k),
        }
        for t, p, m, r, k in zip(pdp.delays_us, pdp_db, model_db, residual, included)
    ]
    report = CompareReport(
        model=model.name,
        rmse_db=_rmse(residual[included]),
        n_compared=int(included.sum()),
        noise_floor_db=floor,
        threshold_db=threshold_db,
        pdp_cluster_count=len(spans),
        model_cluster_count=model_clusters,
        clusters=clusters,
        residuals=residuals,
    )
    logger.info("compare vs %s: rmse %.3f dB over %d points", model.name, report.rmse_db, report.n_compared)
    return report
