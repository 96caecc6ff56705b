import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.extra.numpy import arrays

from src.sounder.emulator import (
    ChannelRealization,
    add_awgn,
    apply_channel,
    emulate,
    realize_channel,
)
from src.sounder.errors import EmptyTapSet, OffGridDelay, ZeroSignalPower
from src.sounder.models import TapSet, builtin_hilly, sample_taps

FS = 1e6


def _channel(delays, gains):
    gains = np.asarray(gains, dtype=complex)
    return ChannelRealization(
        delays=np.asarray(delays, dtype=np.int64),
        gains=gains,
        amplitudes=np.abs(gains),
    )


# --------------------------------------------------------------------------- #
# Realisation                                                                 #
# --------------------------------------------------------------------------- #
def test_static_gains_keep_tap_amplitude():
    taps = TapSet.from_arrays([0.0, 3.0, 7.0], [0.0, 0.0, 0.0])
    ch = realize_channel(taps, FS, "static", seed=3)
    assert np.allclose(np.abs(ch.gains), 1.0)
    assert ch.delays.tolist() == [0, 3, 7]


def test_hilly_taps_land_on_integer_samples():
    ch = realize_channel(sample_taps(builtin_hilly(), 1.0, -25), FS)
    assert ch.delays.tolist() == [0, 1, 2, 3, 4, 5, 11, 12, 13]
    assert ch.max_delay == 13


def test_off_grid_delay():
    taps = TapSet.from_arrays([0.0, 0.5], [0.0, -3.0])
    with pytest.raises(OffGridDelay):
        realize_channel(taps, FS)
    # half-microsecond delays are whole samples at 2 MHz
    assert realize_channel(taps, 2e6).delays.tolist() == [0, 1]


def test_empty_taps_rejected():
    with pytest.raises(EmptyTapSet):
        realize_channel(TapSet(), FS)


def test_same_seed_same_channel():
    taps = sample_taps(builtin_hilly(), 1.0, -25)
    a = realize_channel(taps, FS, seed=11)
    b = realize_channel(taps, FS, seed=11)
    c = realize_channel(taps, FS, seed=12)
    assert np.array_equal(a.gains, b.gains)
    assert not np.array_equal(a.gains, c.gains)


# --------------------------------------------------------------------------- #
# Convolution                                                                 #
# --------------------------------------------------------------------------- #
def test_identity_channel():
    tx = np.array([1, -1, 1, 1, -1], dtype=complex)
    assert np.array_equal(apply_channel(tx, _channel([0], [1.0])), tx)


def test_pure_delay():
    tx = np.array([1, 2, 3], dtype=complex)
    out = apply_channel(tx, _channel([4], [1.0]))
    assert out.tolist() == [0, 0, 0, 0, 1, 2, 3]


def test_two_tap_impulse_response():
    out = apply_channel(np.array([1, 0, 0, 0], dtype=complex), _channel([0, 2], [1.0, 0.5j]))
    assert np.allclose(out, [1, 0, 0.5j, 0, 0, 0])


def test_impulse_energy_matches_tap_power():
    taps = sample_taps(builtin_hilly(), 1.0, -25)
    ch = realize_channel(taps, FS, seed=5)
    delta = np.zeros(32, dtype=complex)
    delta[0] = 1
    out = apply_channel(delta, ch)
    assert np.sum(np.abs(out) ** 2) == pytest.approx(taps.power_linear.sum())
    assert np.allclose(out[ch.delays], ch.gains)


_samples = arrays(
    np.float64,
    st.just(16),
    elements=st.floats(min_value=-10, max_value=10, allow_nan=False),
)


@settings(deadline=None, max_examples=30)
@given(x=_samples, y=_samples, a=st.floats(-5, 5), b=st.floats(-5, 5))
def test_channel_is_linear(x, y, a, b):
    ch = _channel([0, 1, 5], [1.0, 0.3 - 0.2j, -0.1j])
    lhs = apply_channel(a * x + b * y, ch)
    rhs = a * apply_channel(x, ch) + b * apply_channel(y, ch)
    assert np.allclose(lhs, rhs, atol=1e-9)


# --------------------------------------------------------------------------- #
# Block fading                                                                #
# --------------------------------------------------------------------------- #
def test_block_rayleigh_unit_mean_power():
    taps = TapSet.from_arrays([0.0], [0.0])
    ch = realize_channel(taps, FS, "block_rayleigh", seed=2, frame_len=10)
    gains = ch.frame_gains(20000)[:, 0]
    assert np.mean(np.abs(gains) ** 2) == pytest.approx(1.0, rel=0.03)


def test_block_rayleigh_frame_zero_is_stable():
    taps = sample_taps(builtin_hilly(), 1.0, -25)
    ch = realize_channel(taps, FS, "block_rayleigh", seed=9, frame_len=10)
    assert np.array_equal(ch.frame_gains(1)[0], ch.frame_gains(50)[0])
    assert np.array_equal(ch.gains, ch.frame_gains(1)[0])


def test_block_rayleigh_gain_follows_frame():
    taps = TapSet.from_arrays([0.0, 2.0], [0.0, -6.0])
    ch = realize_channel(taps, FS, "block_rayleigh", seed=4, frame_len=5)
    out = apply_channel(np.ones(15, dtype=complex), ch)
    per_frame = ch.frame_gains(3)
    assert out[0] == pytest.approx(per_frame[0, 0])
    assert out[6] == pytest.approx(per_frame[1, 0] + per_frame[0, 1])
    assert out[16] == pytest.approx(per_frame[2, 1])


# --------------------------------------------------------------------------- #
# Noise                                                                       #
# --------------------------------------------------------------------------- #
def test_noise_disabled():
    x = np.arange(5, dtype=complex)
    for snr in (None, float("inf")):
        y = add_awgn(x, snr, seed=0)
        assert np.array_equal(y, x)
        assert y is not x


def test_noise_variance_matches_snr():
    x = np.ones(100_000, dtype=complex)
    y = add_awgn(x, 10.0, seed=7)
    assert np.mean(np.abs(y - x) ** 2) == pytest.approx(0.1, rel=0.02)


def test_noise_rejects_bad_signals():
    with pytest.raises(ZeroSignalPower):
        add_awgn(np.zeros(10), 10.0, seed=0)
    with pytest.raises(ValueError):
        add_awgn(np.array([]), 10.0, seed=0)


def test_emulate_seeds_noise_separately():
    taps = sample_taps(builtin_hilly(), 1.0, -25)
    tx = np.tile([1.0, -1.0, 1.0, 0.0], 50).astype(complex)
    rx, ch = emulate(tx, taps, FS, seed=21, snr_db=20)
    expected = add_awgn(apply_channel(tx, ch), 20, 22)
    assert np.array_equal(rx, expected)
    assert rx.size == tx.size + 13
