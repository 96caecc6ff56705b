import json

import numpy as np
import pytest

from src.sounder.errors import FormatError, NonFiniteSample, ParseError
from src.sounder.io import IqCapture, import_csv_iq, read_capture, write_capture
from src.sounder.io.capture import read_meta, sidecar_path
from tests.utils import complex_noise


def _capture(n=220_000, **kwargs):
    return IqCapture(samples=complex_noise(n, seed=1), sample_rate_hz=1e6, capture_id="cap", **kwargs)


def test_round_trip(tmp_path):
    cap = _capture(extra={"stage": "tx"})
    path = write_capture(cap, tmp_path / "cap.iq")
    assert path.stat().st_size == 8 * 220_000
    assert sidecar_path(path).name == "cap.iqmeta.json"

    back = read_capture(path)
    assert np.array_equal(back.samples, cap.samples)
    assert back.sample_rate_hz == 1e6
    assert back.center_freq_hz == 86e6
    assert back.capture_id == "cap"
    assert back.provenance == "emulated"
    assert back.extra == {"stage": "tx"}


def test_writer_is_deterministic(tmp_path):
    a = write_capture(_capture(1000), tmp_path / "a.iq")
    b = write_capture(_capture(1000), tmp_path / "b.iq")
    assert a.read_bytes() == b.read_bytes()
    assert sidecar_path(a).read_text() == sidecar_path(b).read_text()


def test_sidecar_is_sorted_json(tmp_path):
    path = write_capture(_capture(10), tmp_path / "c.iq")
    data = json.loads(sidecar_path(path).read_text())
    assert list(data) == sorted(data)
    assert data["format"] == "sounder-iq/1"
    assert data["dtype"] == "cf32_le"
    assert data["n_samples"] == 10


def test_truncated_payload(tmp_path):
    path = write_capture(_capture(100), tmp_path / "t.iq")
    path.write_bytes(path.read_bytes()[:-4])
    with pytest.raises(FormatError):
        read_capture(path)


def test_sample_count_mismatch(tmp_path):
    path = write_capture(_capture(100), tmp_path / "m.iq")
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(FormatError):
        read_capture(path)


@pytest.mark.parametrize(
    "edit",
    [
        lambda d: d.update(format="other/2"),
        lambda d: d.update(dtype="ci16_le"),
        lambda d: d.update(sample_rate_hz=-1),
    ],
)
def test_bad_sidecar(tmp_path, edit):
    path = write_capture(_capture(10), tmp_path / "s.iq")
    data = json.loads(sidecar_path(path).read_text())
    edit(data)
    sidecar_path(path).write_text(json.dumps(data))
    with pytest.raises(FormatError):
        read_capture(path)


def test_missing_files(tmp_path):
    path = write_capture(_capture(10), tmp_path / "x.iq")
    sidecar_path(path).unlink()
    with pytest.raises(FormatError):
        read_meta(path)
    sidecar_path(path).write_text("not json")
    with pytest.raises(FormatError):
        read_meta(path)


# --------------------------------------------------------------------------- #
# CSV import                                                                  #
# --------------------------------------------------------------------------- #
def test_import_csv(tmp_path):
    src = tmp_path / "dump.csv"
    src.write_text("i,q\n1.0,0.0\n0.5,-0.5\n-1,2\n")
    cap = import_csv_iq(src, 1e6)
    assert cap.n_samples == 3
    assert cap.samples.tolist() == [1 + 0j, 0.5 - 0.5j, -1 + 2j]
    assert cap.provenance == "imported"
    assert cap.capture_id == "dump"


@pytest.mark.parametrize(
    "text, error",
    [
        ("i,q\n1.0,abc\n", ParseError),
        ("a,b\n1,2\n", ParseError),
        ("i,q\n1.0,nan\n", NonFiniteSample),
        ("i,q\n1.0,0.0\ninf,1\n", NonFiniteSample),
    ],
)
def test_import_csv_rejects(tmp_path, text, error):
    src = tmp_path / "bad.csv"
    src.write_text(text)
    with pytest.raises(error):
        import_csv_iq(src, 1e6)
