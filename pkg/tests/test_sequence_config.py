import json

import numpy as np
import pytest

from src.sounder.config.sequence import SequenceSpec
from src.sounder.errors import NonPrimitivePolynomial, SchemaError
from src.sounder.waveform import generate_msequence


def test_spec_from_json_example(tmp_path):
    path = tmp_path / "seq.json"
    path.write_text('{"order":10,"taps":[10,3],"seed":"0x3FF","pad_len":77,"chip_rate_hz":1000000}')
    spec = SequenceSpec.from_file(path)
    assert spec.seed == 0x3FF
    seq = spec.build()
    assert seq.length == 1023
    assert seq.frame_len == 1100
    assert np.array_equal(seq.chips, generate_msequence(10).chips)


def test_seed_serialised_as_hex():
    data = json.loads(SequenceSpec(order=5, taps=[5, 2], seed=19).to_json())
    assert data["seed"] == "0x13"
    assert SequenceSpec.from_dict(data).seed == 19


def test_round_trip_from_sequence():
    seq = generate_msequence(7, seed=0x55, pad_len=9)
    spec = SequenceSpec.from_sequence(seq)
    assert spec.taps == [7, 1]
    assert np.array_equal(spec.build().chips, seq.chips)


def test_yaml_spec(tmp_path):
    path = tmp_path / "seq.yaml"
    path.write_text("order: 4\ntaps: [4, 1]\nseed: 0xF\npad_len: 2\n")
    spec = SequenceSpec.from_file(path)
    assert spec.build().frame_len == 17


def test_yaml_round_trip(tmp_path):
    spec = SequenceSpec(order=9, taps=[9, 4], seed=0x1A5, pad_len=60)
    path = tmp_path / "seq.yml"
    path.write_text(spec.to_yaml())
    assert "0x1A5" in path.read_text()
    assert SequenceSpec.from_file(path) == spec


def test_invalid_spec_is_schema_error():
    with pytest.raises(SchemaError):
        SequenceSpec.from_dict({"order": "ten"})


def test_unsupported_extension(tmp_path):
    with pytest.raises(ValueError):
        SequenceSpec.from_file(tmp_path / "seq.txt")


def test_non_primitive_spec_fails_on_build():
    with pytest.raises(NonPrimitivePolynomial):
        SequenceSpec(order=10, taps=[10, 4]).build()
