import json

import numpy as np
import pytest

from src.sounder.config.sequence import SequenceSpec
from src.sounder.emulator import emulate
from src.sounder.errors import FormatError
from src.sounder.estimator import extract_taps
from src.sounder.io import IqCapture, read_capture
from src.sounder.metrics import compare
from src.sounder.models import builtin_bad_urban, builtin_hilly, eval_alpha, get_model, sample_taps
from src.sounder.workflow import (
    emulate_capture,
    estimate_pdp,
    generate_capture,
    run_pipeline,
    sequence_for,
)
from tests.utils import fake, random_tap_set


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    """One default pipeline run per built-in model."""
    out = tmp_path_factory.mktemp("runs")
    return {name: run_pipeline(name, out / name) for name in ("bad-urban", "hilly")}


@pytest.mark.parametrize("name", ["bad-urban", "hilly"])
def test_strong_taps_are_recovered(runs, name):
    result = runs[name]
    model = get_model(name)
    expected = sample_taps(model, 1.0, -25)
    found = dict(zip(result.taps.delays_us, result.taps.powers_db))
    for tap in expected:
        assert tap.delay_us in found
        assert found[tap.delay_us] == pytest.approx(eval_alpha(model, tap.delay_us), abs=1.0)
    assert result.comparison.rmse_db <= 1.0
    # only windows whose full 100 lags fit in the stream are averaged
    assert result.pdp.n_averaged >= 199


def test_each_profile_fits_its_own_model(runs):
    hilly_pdp, urban_pdp = runs["hilly"].pdp, runs["bad-urban"].pdp
    assert compare(hilly_pdp, builtin_hilly()).rmse_db < compare(hilly_pdp, builtin_bad_urban()).rmse_db
    assert compare(urban_pdp, builtin_bad_urban()).rmse_db < compare(urban_pdp, builtin_hilly()).rmse_db


def test_cluster_structure_survives_estimation(runs):
    assert runs["hilly"].dispersion.cluster_count == 3
    assert runs["hilly"].comparison.model_cluster_count == 3
    assert runs["bad-urban"].dispersion.max_excess_delay_us == 35.0


def test_artefacts_written(runs):
    paths = runs["hilly"].paths
    report = json.loads(paths["report"].read_text())
    assert report["model"] == "hilly"
    assert report["snr_db"] == 30.0
    assert set(report) == {"model", "seed", "snr_db", "dispersion", "compare"}
    assert read_capture(paths["tx"]).n_samples == 220_000
    rx = read_capture(paths["rx"])
    assert rx.extra["model"] == "hilly"
    assert rx.extra["n_taps"] == len(sample_taps(builtin_hilly(), 1.0, -40))


def test_random_tap_sets_round_trip():
    spec = SequenceSpec()
    seq, tx = generate_capture(spec, 200)
    for _ in range(4):
        taps = random_tap_set(max_delay_us=40)
        seed = fake.random_int(min=0, max=10_000)
        samples, _ = emulate(tx.samples, taps, 1e6, seed=seed, snr_db=30.0, frame_len=seq.frame_len)
        rx = IqCapture(samples=samples, sample_rate_hz=1e6, extra=tx.extra)
        found = extract_taps(estimate_pdp(rx, seq))
        assert found.delays_us.tolist() == taps.delays_us.tolist()
        assert np.allclose(found.powers_db, taps.powers_db, atol=1.0)


def test_block_fading_pipeline(tmp_path):
    result = run_pipeline("hilly", tmp_path, fading_mode="block_rayleigh", seed=2)
    assert result.comparison.rmse_db <= 2.0
    assert result.taps.delays_us[0] == 0.0


def test_sequence_comes_from_sidecar():
    seq, tx = generate_capture(SequenceSpec(order=7, taps=[7, 1], seed=5, pad_len=20), 3)
    assert tx.capture_id == "tx-m7-r3"
    assert np.array_equal(sequence_for(tx).chips, seq.chips)
    rx = emulate_capture(tx, builtin_hilly(), snr_db=None)
    assert rx.extra["sequence"] == tx.extra["sequence"]
    assert rx.extra["snr_db"] is None
    with pytest.raises(FormatError):
        sequence_for(IqCapture(samples=np.ones(10), sample_rate_hz=1e6))


def test_infinite_snr_is_stored_as_none(tmp_path):
    result = run_pipeline("hilly", tmp_path, snr_db=float("inf"), repetitions=10)
    assert json.loads(result.paths["report"].read_text())["snr_db"] is None


@pytest.mark.parametrize("snr_db", [None, 80.0])
def test_clean_capture_keeps_bad_urban_taps_only(tmp_path, snr_db):
    result = run_pipeline("bad-urban", tmp_path, snr_db=snr_db, seed=1)
    expected = sample_taps(builtin_bad_urban(), 1.0, -40)
    assert result.taps.delays_us.tolist() == expected.delays_us.tolist()
    assert result.taps.delays_us[-1] == 37.0
    assert result.dispersion.cluster_count == 3
    assert result.comparison.pdp_cluster_count == 3
    assert result.comparison.rmse_db <= 0.1
