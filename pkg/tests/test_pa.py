import numpy as np
import pytest

from onebitlink.dsp import ButterworthSpec, design_butterworth
from onebitlink.errors import ConfigurationError
from onebitlink.pa import (HARMONIC_BOUND, PaConfig, PaOutput, am_am_curve,
                           bandpass_reconstruct, clip, pa_power,
                           set_operating_point, transmit_power)

# first harmonic of a clipped unit cosine, (2/pi)(asin r + r sqrt(1-r^2))
FIRST_HARMONIC_AT_HALF = 0.6089977810442294
FIRST_HARMONIC_AT_DOUBLE = 1.2179955620884588
TWO_OVER_PI = 0.6366197723675814


def test_harmonic_bound_constant():
    assert np.isclose(HARMONIC_BOUND, 1.2732395447351628, rtol=0, atol=1e-15)


def test_clip_bound_is_exact():
    rng = np.random.default_rng(2)
    x = 3.0 * rng.standard_normal(10000)
    y = clip(x, 0.7)
    assert np.max(np.abs(y)) <= 0.7
    inside = np.abs(x) <= 0.7
    np.testing.assert_allclose(y[inside], x[inside])


def test_set_operating_point_scales_with_rms():
    x = np.full(100, 2.0)
    assert np.isclose(set_operating_point(0.1, x), 0.2)
    # on a unit-RMS waveform v_sat equals the back-off itself
    assert np.isclose(set_operating_point(0.1, np.ones(50)), 0.1)


def test_set_operating_point_window():
    x = np.concatenate([np.zeros(10), np.ones(20), np.zeros(10)])
    assert np.isclose(set_operating_point(1.0, x, window=slice(10, 30)), 1.0)


def test_set_operating_point_rejects_silence():
    with pytest.raises(ValueError):
        set_operating_point(0.1, np.zeros(8))


def test_first_harmonic_oracle_values():
    np.testing.assert_allclose(am_am_curve(0.5, np.array([1.0]))[0],
                               FIRST_HARMONIC_AT_HALF, rtol=1e-5)
    np.testing.assert_allclose(am_am_curve(1.0, np.array([2.0]))[0],
                               FIRST_HARMONIC_AT_DOUBLE, rtol=1e-5)


def test_first_harmonic_linear_region():
    amps = np.array([0.2, 0.5, 0.99])
    np.testing.assert_allclose(am_am_curve(1.0, amps), amps, rtol=1e-6)


def test_first_harmonic_saturates_at_bound():
    deep = am_am_curve(1.0, np.array([1000.0]))[0]
    assert np.isclose(deep, HARMONIC_BOUND, rtol=1e-4)
    assert deep <= HARMONIC_BOUND


def test_pa_power_of_sinusoid():
    # mean rectified sinusoid is (2/pi) A, so p_pa = v_sat * (2/pi) A
    n = 4096 * 8
    i_l = 0.3 * np.cos(2 * np.pi * np.arange(n) / 4096.0)
    assert np.isclose(pa_power(i_l, v_sat=0.5), 0.5 * TWO_OVER_PI * 0.3, rtol=1e-5)


def test_transmit_power_mean_product():
    y = np.array([1.0, -1.0, 2.0])
    i = y / 2.0
    assert np.isclose(transmit_power(i, y), np.mean(i * y))
    with pytest.raises(ValueError):
        transmit_power(np.ones(3), np.ones(4))


def test_clipped_sine_chain_respects_harmonic_bound():
    # full stage on a pure tone: clip, bandpass, both powers, bound holds
    fs, fc = 128.0, 30.0
    n = 8192
    x = np.sqrt(2.0) * np.cos(2 * np.pi * fc * np.arange(n) / fs)  # unit RMS
    v_sat = set_operating_point(0.1, x)
    v_t = clip(x, v_sat)
    sos = design_butterworth(ButterworthSpec(order=4, kind="bandpass",
                                             cutoff_low=fc - 0.45,
                                             cutoff_high=fc + 0.45), fs=fs)
    y_p = bandpass_reconstruct(v_t, sos)
    i_l = y_p / 1.0
    settle = slice(2048, n)
    out = PaOutput(y_p=y_p, i_l=i_l,
                   p_pa=pa_power(i_l, v_sat, settle),
                   p_t=transmit_power(i_l, y_p, settle))
    assert out.p_t <= HARMONIC_BOUND * out.p_pa * (1 + 1e-9)
    # hard-driven tone: fundamental amplitude approaches (4/pi) v_sat
    amp = np.sqrt(2.0 * out.p_t)
    assert np.isclose(amp, HARMONIC_BOUND * v_sat, rtol=0.02)


def test_pa_output_invariant_enforced():
    with pytest.raises(ValueError):
        PaOutput(y_p=np.zeros(1), i_l=np.zeros(1), p_pa=1.0, p_t=1.5)
    with pytest.raises(ValueError):
        PaOutput(y_p=np.zeros(1), i_l=np.zeros(1), p_pa=-0.1, p_t=0.0)


def test_pa_config_validation():
    with pytest.raises(ConfigurationError):
        PaConfig(ibo=0.0)
    with pytest.raises(ConfigurationError):
        PaConfig(r_load=-1.0)
    with pytest.raises(ConfigurationError):
        PaConfig(bpf=ButterworthSpec(order=4, kind="lowpass", cutoff_high=1.0))
