"""
src.sounder.io.tables
~~~~~~~~~~~~~~~~~~~~~

Plot-ready CSV tables and their JSON sidecars.

file                 | header
---------------------|-----------------------------------------------------
model grid           | ``delay_us,power_db``
PDP                  | ``delay_us,power_db,power_linear`` (+ ``<stem>.meta.json``)
compare residuals    | ``delay_us,pdp_db,model_db,residual_db,included``

Numbers are written with ``%.6f`` and ``\\n`` line endings.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from src.sounder.errors import ParseError
from src.sounder.estimator.pdp import ZERO_POWER_DB, Pdp
from src.sounder.models.segments import PdpModel, delay_grid, eval_alpha
from src.sounder.reports import CompareReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6f"
PDP_COLUMNS = ["delay_us", "power_db", "power_linear"]
RESIDUAL_COLUMNS = ["delay_us", "pdp_db", "model_db", "residual_db", "included"]


def _write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("wrote %d rows to %s", len(frame), path)
    return path


def write_json(data: Dict[str, Any] | str, path: str | Path) -> Path:
    """Write *data* (a mapping or ready JSON text) with a trailing newline."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = data if isinstance(data, str) else json.dumps(data, indent=2, sort_keys=True)
    path.write_text(text + "\n")
    return path


def meta_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


# --------------------------------------------------------------------------- #
# Model grid                                                                  #
# --------------------------------------------------------------------------- #
def model_grid_frame(model: PdpModel, spacing_us: float) -> pd.DataFrame:
    grid = delay_grid(model.max_delay_us, spacing_us)
    return pd.DataFrame(
        {"delay_us": grid, "power_db": [eval_alpha(model, tau) for tau in grid]}
    )


def write_model_grid(model: PdpModel, spacing_us: float, path: str | Path) -> Path:
    return _write_csv(model_grid_frame(model, spacing_us), path)


# --------------------------------------------------------------------------- #
# PDP                                                                         #
# --------------------------------------------------------------------------- #
def write_pdp(pdp: Pdp, path: str | Path, extra: Optional[Dict[str, Any]] = None) -> Path:
    frame = pd.DataFrame(
        {
            "delay_us": pdp.delays_us,
            "power_db": pdp.power_db,
            "power_linear": pdp.power_linear,
        }
    )
    path = _write_csv(frame, path)
    meta = {
        "n_averaged": pdp.n_averaged,
        "noise_floor_db": pdp.noise_floor_db,
        "offset": pdp.offset,
        "delay_resolution_us": pdp.delay_resolution_us,
        **(extra or {}),
    }
    write_json(meta, meta_path(path))
    return path


def read_pdp(path: str | Path) -> Pdp:
    """Load a PDP CSV back, peak-normalised, with its sidecar if present."""
    path = Path(path)
    try:
        frame = pd.read_csv(path)
    except (FileNotFoundError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise ParseError(f"cannot read PDP table {path}: {exc}") from exc
    missing = [c for c in ("delay_us", "power_db") if c not in frame.columns]
    if missing:
        raise ParseError(f"{path} lacks column(s) {', '.join(missing)}")
    try:
        delays = pd.to_numeric(frame["delay_us"]).to_numpy(dtype=np.float64)
        db = pd.to_numeric(frame["power_db"]).to_numpy(dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{path} holds a non-numeric value: {exc}") from exc

    power = np.where(db <= ZERO_POWER_DB, 0.0, 10 ** (db / 10))
    meta: Dict[str, Any] = {}
    side = meta_path(path)
    if side.exists():
        try:
            meta = json.loads(side.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"cannot parse {side}: {exc}") from exc
    resolution = meta.get("delay_resolution_us")
    if resolution is None:
        resolution = float(delays[1] - delays[0]) if delays.size > 1 else 1.0
    return Pdp(
        delays_us=delays,
        power_linear=power,
        n_averaged=int(meta.get("n_averaged", 0)),
        noise_floor_db=meta.get("noise_floor_db"),
        offset=int(meta.get("offset", 0)),
        delay_resolution_us=float(resolution),
    )


# --------------------------------------------------------------------------- #
# Compare residuals                                                           #
# --------------------------------------------------------------------------- #
def write_residuals(report: CompareReport, path: str | Path) -> Path:
    frame = pd.DataFrame(report.residuals, columns=RESIDUAL_COLUMNS)
    frame["included"] = frame["included"].astype(int)
    return _write_csv(frame, path)
