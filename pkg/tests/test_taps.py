import math

import numpy as np
import pytest

from src.sounder.errors import EmptyTapSet
from src.sounder.models import (
    PdpModel,
    PdpSegment,
    Tap,
    TapSet,
    analytic_dispersion,
    builtin_bad_urban,
    builtin_hilly,
    eval_alpha,
    sample_taps,
)


def _bad_urban_oracle(tau):
    return np.where(
        tau < 10,
        -1.7 * tau,
        np.where(tau < 35, -1.76 * tau + 11.6, 55 * 0.85 ** (tau - 35) - 78),
    )


def _hilly_oracle(tau):
    db = np.full(tau.shape, np.nan)
    db[tau < 3] = -8.6667 * tau[tau < 3]
    mid = (tau >= 3) & (tau < 6.8)
    db[mid] = -4.8684 * tau[mid] + 2.6053
    late = (tau >= 11) & (tau < 14.5)
    db[late] = -4.2857 * tau[late] + 31.6429
    return db


def _moments(tau, db):
    keep = ~np.isnan(db)
    tau, p = tau[keep] - tau[keep][0], 10 ** (db[keep] / 10)
    mean = (p * tau).sum() / p.sum()
    return mean, math.sqrt((p * tau**2).sum() / p.sum() - mean**2)


def test_tap_amplitude_from_power():
    assert Tap(0.0, -20.0).linear_amplitude == pytest.approx(0.1)
    with pytest.raises(ValueError):
        Tap(-1.0, 0.0)


def test_tapset_requires_ascending_delays():
    with pytest.raises(ValueError):
        TapSet.from_arrays([0.0, 2.0, 2.0], [0.0, -1.0, -2.0])
    assert len(TapSet()) == 0


def test_unit_power_normalisation():
    taps = TapSet.from_arrays([0.0, 1.0, 5.0], [0.0, -3.0, -10.0]).normalized()
    assert taps.normalization == "unit_total_power"
    assert taps.power_linear.sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        TapSet(taps.taps[:1] + (Tap(9.0, 0.0),), "unit_total_power")


def test_bad_urban_sampled_taps():
    taps = sample_taps(builtin_bad_urban(), 1.0, -80)
    assert taps[0].delay_us == 0 and taps[0].power_db == 0
    by_delay = dict(zip(taps.delays_us, taps.powers_db))
    assert by_delay[35.0] == pytest.approx(-23.0)
    assert len(taps) == 61


def test_hilly_sampled_taps():
    taps = sample_taps(builtin_hilly(), 1.0, -25)
    assert taps.delays_us.tolist() == [0, 1, 2, 3, 4, 5, 11, 12, 13]
    assert np.all(taps.powers_db >= -25)


def test_threshold_above_peak_is_empty():
    with pytest.raises(EmptyTapSet):
        sample_taps(builtin_hilly(), 1.0, +10)


def test_resampling_reproduces_eval_alpha():
    model = builtin_bad_urban()
    for tap in sample_taps(model, 0.5, -60):
        assert tap.power_db == eval_alpha(model, tap.delay_us)


def test_floor_taps_only_on_request():
    hilly = builtin_hilly()
    assert 8.0 not in sample_taps(hilly, 1.0).delays_us
    with_floor = sample_taps(hilly, 1.0, include_floor=True)
    assert len(with_floor) == 21
    assert dict(zip(with_floor.delays_us, with_floor.powers_db))[8.0] == -30.5


def test_normalised_sampling():
    taps = sample_taps(builtin_hilly(), 1.0, -25, normalize=True)
    assert taps.power_linear.sum() == pytest.approx(1.0, abs=1e-12)


def test_analytic_dispersion_simple_models():
    single = PdpModel(
        name="single",
        floor_db=-100,
        max_delay_us=0.5,
        segments=(PdpSegment(kind="constant_db", tau_lo=0, tau_hi=0.5, level=0),),
    )
    assert analytic_dispersion(single, 1.0) == (0.0, 0.0)

    pair = PdpModel(
        name="pair",
        floor_db=-100,
        max_delay_us=10,
        segments=(
            PdpSegment(kind="constant_db", tau_lo=0, tau_hi=1, level=0),
            PdpSegment(kind="constant_db", tau_lo=10, tau_hi=11, level=0),
        ),
    )
    mean, rms = analytic_dispersion(pair, 1.0)
    assert mean == pytest.approx(5.0)
    assert rms == pytest.approx(5.0)


@pytest.mark.parametrize(
    "factory, oracle, horizon",
    [(builtin_bad_urban, _bad_urban_oracle, 60), (builtin_hilly, _hilly_oracle, 20)],
)
def test_analytic_dispersion_matches_brute_force(factory, oracle, horizon):
    tau = np.arange(int(round(horizon / 0.01)) + 1) * 0.01
    expected_mean, expected_rms = _moments(tau, oracle(tau))
    mean, rms = analytic_dispersion(factory(), 0.01)
    assert mean == pytest.approx(expected_mean, rel=1e-3)
    assert rms == pytest.approx(expected_rms, rel=1e-3)


def test_cost207_hilly_terrain_profile_has_two_clusters():
    from src.sounder.metrics import cluster_count
    from src.sounder.models import get_model

    ht = get_model("cost207-ht")
    assert eval_alpha(ht, 0.0) == 0.0
    assert eval_alpha(ht, 1.0) == pytest.approx(-15.2003)
    assert eval_alpha(ht, 16.0) == pytest.approx(-10 - 4.3429)
    assert eval_alpha(ht, 10.0) == -60.0
    assert cluster_count(sample_taps(ht, 1.0)) == 2
